//! Acceptance suite. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

#[path = "support/fixtures.rs"]
mod fixtures;
#[path = "support/scalar_oracle.rs"]
mod scalar_oracle;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use ringqkd::grid::grid_to_csv;
use ringqkd::keylog::parse_log;
use ringqkd_core::capacity::{
    brute_force_pairs_per_link, pairs_per_link, switched_schedule, ScheduleReading,
};
use ringqkd_core::ingest::{db_drop, summarize, LinkSummary};
use ringqkd_core::skr::{cutoff_attenuation, skr_bps, SkrProfile, DEFAULT_KEY_RATE_CEILING_BPS};
use ringqkd_core::sweep::{crossover_curve, run_sweep, SweepGrid, SweepSpec};
use ringqkd_core::topology::RingSpec;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn max_positive_n(grid: &SweepGrid, length_km: f64) -> Option<usize> {
    crossover_curve(grid)
        .into_iter()
        .find(|c| (c.length_km - length_km).abs() < 1e-9)
        .and_then(|c| c.max_n)
}

fn crossover_reproduction() -> Outcome {
    let start = Instant::now();
    let grid = run_sweep(&SweepSpec::default(), &SkrProfile::experimental()).unwrap();
    let _csv = grid_to_csv(&grid);
    let elapsed = start.elapsed();

    let short_all_positive = grid
        .rows()
        .filter(|(_, l, _)| *l <= 5.0)
        .all(|(_, _, c)| c.r.is_some_and(|r| r > 0.0));
    // Switched wins on a prefix of short lengths in every row.
    let prefix_pattern = grid.n_values.iter().enumerate().all(|(ni, _)| {
        let signs: Vec<bool> = (0..grid.lengths_km.len())
            .map(|li| grid.cell(ni, li).r.is_some_and(|r| r > 0.0))
            .collect();
        signs.windows(2).all(|w| w[0] || !w[1])
    });
    let at_7_5 = max_positive_n(&grid, 7.5);
    let at_10 = max_positive_n(&grid, 10.0);
    let within = |got: Option<usize>, want: usize| got.is_some_and(|n| n.abs_diff(want) <= 3);
    outcome(
        short_all_positive
            && prefix_pattern
            && within(at_7_5, 20)
            && within(at_10, 10)
            && elapsed < Duration::from_secs(10),
        format!(
            "R>0 for all N at L<=5 km: {short_all_positive}; short-link prefix pattern: {prefix_pattern}; \
             max N @7.5 km = {at_7_5:?} (20±3); max N @10 km = {at_10:?} (10±3); {elapsed:.2?}"
        ),
    )
}

fn high_profile_claim() -> Outcome {
    let grid = run_sweep(&SweepSpec::default(), &SkrProfile::high()).unwrap();
    let exact = grid.at(20, 10.0).and_then(|c| c.r);
    let mut hits = Vec::new();
    for n in 18..=22 {
        for l in [9.0, 9.5, 10.0, 10.5, 11.0] {
            if grid.at(n, l).and_then(|c| c.r).is_some_and(|r| r > 0.0) {
                hits.push((n, l));
            }
        }
    }
    outcome(
        !hits.is_empty(),
        format!(
            "R(20, 10 km) = {exact:?}; positive cells in ±2 N/±1 km window: {}",
            hits.len()
        ),
    )
}

fn combinatorics_oracle() -> Outcome {
    let start = Instant::now();
    let mismatches: Vec<usize> = (3..=64)
        .filter(|&n| pairs_per_link(n).unwrap() != brute_force_pairs_per_link(n).unwrap())
        .collect();
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && elapsed < Duration::from_secs(1),
        format!("N in [3, 64], mismatches {mismatches:?}, {elapsed:.2?}"),
    )
}

fn fairness_property() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0004);
    let profiles = SkrProfile::builtins();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    while checked < 100 {
        let profile = &profiles[rng.gen_range(0..profiles.len())];
        let n = rng.gen_range(3..=15);
        let len = rng.gen_range(0.5..=15.0);
        let spec = RingSpec::new(n, len).unwrap();
        let Ok(_) = switched_schedule(&spec, profile, 0, ScheduleReading::default()) else {
            continue;
        };
        for node in 0..n {
            let s = switched_schedule(&spec, profile, node, ScheduleReading::default()).unwrap();
            let delivered: Vec<f64> = s
                .shares
                .iter()
                .map(|p| p.link_rate_bps * p.time / s.total)
                .collect();
            for d in &delivered {
                worst = worst.max((d - delivered[0]).abs() / delivered[0]);
            }
        }
        checked += 1;
    }
    outcome(
        worst <= 1e-12,
        format!("{checked} feasible instances, worst relative spread {worst:.2e}"),
    )
}

fn model_sanity() -> Outcome {
    let profiles = SkrProfile::builtins();
    let mut monotone = true;
    let mut zero_beyond = true;
    for p in &profiles {
        let cutoff = cutoff_attenuation(&p.params).unwrap();
        let mut prev = f64::INFINITY;
        let mut i = 0u32;
        while f64::from(i) * 0.05 <= cutoff + 10.0 {
            let a = f64::from(i) * 0.05;
            let r = skr_bps(&p.params, a).unwrap();
            monotone &= r <= prev;
            if a >= cutoff {
                zero_beyond &= r == 0.0;
            }
            prev = r;
            i += 1;
        }
    }

    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0005);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = &profiles[rng.gen_range(0..profiles.len())];
        let a = rng.gen_range(0.0..40.0);
        let oracle = scalar_oracle::key_rate_bps(
            &scalar_oracle::literature(p.params.eta_bob, DEFAULT_KEY_RATE_CEILING_BPS),
            a,
        );
        let model = skr_bps(&p.params, a).unwrap();
        let rel = if oracle == 0.0 {
            model.abs()
        } else {
            (model - oracle).abs() / oracle
        };
        worst = worst.max(rel);
    }
    outcome(
        monotone && zero_beyond && worst <= 1e-9,
        format!(
            "monotone on 0.05 dB grid: {monotone}; zero beyond cutoff: {zero_beyond}; \
             oracle worst relative error {worst:.2e} (<= 1e-9)"
        ),
    )
}

fn ingestion_reproduction() -> Outcome {
    let summaries: Vec<LinkSummary> = fixtures::device_pair_logs()
        .into_iter()
        .map(|(label, text)| summarize(&parse_log(&text).unwrap(), label).unwrap())
        .collect();
    let by_label = |l: &str| summaries.iter().find(|s| s.label == l).unwrap();
    let total_a1b2 = by_label("A1B2").total_key_bits;
    let total_a2b1 = by_label("A2B1").total_key_bits;
    let drop_a1 = db_drop(by_label("A1B1"), by_label("A1B2")).unwrap();
    let drop_a2 = db_drop(by_label("A2B2"), by_label("A2B1")).unwrap();

    let totals_ok =
        (total_a1b2 / 2.21e8 - 1.0).abs() <= 0.005 && (total_a2b1 / 1.8e9 - 1.0).abs() <= 0.005;
    let drops_ok = (drop_a2 - fixtures::A2_PENALTY_DB).abs() <= 0.2
        && (drop_a1 - fixtures::A1_PENALTY_DB).abs() <= 0.2
        && drop_a1 > 20.0;
    outcome(
        totals_ok && drops_ok,
        format!(
            "A1-B2 total {total_a1b2:.4e} bits, A2-B1 total {total_a2b1:.4e} bits (±0.5%); \
             A2-B1 drop {drop_a2:.3} dB (14±0.2), A1-B2 drop {drop_a1:.3} dB (>20, 21±0.2)"
        ),
    )
}

fn determinism() -> Outcome {
    let run =
        || grid_to_csv(&run_sweep(&SweepSpec::default(), &SkrProfile::experimental()).unwrap());
    let (a, b) = (run(), run());
    outcome(
        a == b && a.lines().count() == 1 + 26 * 39,
        format!("{} bytes, identical: {}", a.len(), a == b),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("1 crossover reproduction", crossover_reproduction),
        ("2 high-profile 20 nodes / 10 km", high_profile_claim),
        ("3 combinatorics oracle", combinatorics_oracle),
        ("4 fairness property", fairness_property),
        ("5 model sanity", model_sanity),
        ("6 ingestion reproduction", ingestion_reproduction),
        ("7 determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let o = check();
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
