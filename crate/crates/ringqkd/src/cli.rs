//! `ringqkd` subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ringqkd_core::capacity::{self, ScheduleReading};
use ringqkd_core::ingest::{db_drop, summarize, LinkSummary};
use ringqkd_core::skr::SkrProfile;
use ringqkd_core::sweep::{run_sweep, LengthAxis, SweepSpec};
use ringqkd_core::topology::RingSpec;
use serde::Serialize;
use serde_json::json;

use crate::config::{parse_reading, AppConfig};
use crate::error::{Error, Result};
use crate::grid::{emit, skr_curve_csv, Format};
use crate::keylog::{read_log, SummaryDoc};

#[derive(Debug, Parser)]
#[command(
    name = "ringqkd",
    version,
    about = "Relayed vs switched QKD on ring networks"
)]
pub struct Cli {
    /// JSON configuration with profile overrides, ring defaults and flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the key-rate curve f(a) of a profile.
    Skr(SkrArgs),
    /// Compare relayed and switched rates on one ring (JSON to stdout).
    Compare(CompareArgs),
    /// Normalized-difference grid over node count and link length.
    Sweep(SweepArgs),
    /// Summarize key-rate logs and matched/unmatched dB drops (JSON to stdout).
    Ingest(IngestArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, default_value = "experimental")]
    pub profile: String,
    /// Fiber attenuation coefficient, dB/km.
    #[arg(long, value_name = "DB_PER_KM")]
    pub alpha_db_per_km: Option<f64>,
    /// Extra loss on every switched link, dB.
    #[arg(long, value_name = "DB")]
    pub penalty_db: Option<f64>,
    /// Use the circle chord, not the ring fiber, for adjacent switched links.
    #[arg(long)]
    pub adjacent_uses_chord: bool,
    /// Switched rate G_S = 2/T_i (same as --gs-reading factor-two).
    #[arg(long, conflicts_with = "gs_reading")]
    pub gs_factor_two: bool,
    /// How T_i maps to G_S: verbatim (1/T_i), factor-two (2/T_i) or
    /// transceiver-split (4/T_i, default).
    #[arg(long, value_name = "READING")]
    pub gs_reading: Option<String>,
}

#[derive(Debug, Args)]
pub struct SkrArgs {
    #[arg(long, default_value = "experimental")]
    pub profile: String,
    #[arg(long, default_value_t = 40.0, value_name = "DB")]
    pub a_max_db: f64,
    #[arg(long, default_value_t = 0.21, value_name = "DB")]
    pub step_db: f64,
    /// Coefficient for the distance column, dB/km.
    #[arg(long, value_name = "DB_PER_KM")]
    pub alpha_db_per_km: Option<f64>,
    /// Output CSV path (stdout if omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_name = "N")]
    pub nodes: Option<usize>,
    #[arg(long, value_name = "KM")]
    pub length_km: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 5)]
    pub n_min: usize,
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1.0, value_name = "KM")]
    pub len_min: f64,
    #[arg(long, default_value_t = 20.0, value_name = "KM")]
    pub len_max: f64,
    #[arg(long, default_value_t = 0.5, value_name = "KM")]
    pub len_step: f64,
    /// Output path (stdout if omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Log files; each summary is labelled with the file stem.
    #[arg(required = true, value_name = "PATH")]
    pub paths: Vec<PathBuf>,
    /// Matched/unmatched label pair for a dB-drop entry, e.g. A1B1:A1B2.
    #[arg(long = "pair", value_name = "MATCHED:UNMATCHED")]
    pub pairs: Vec<String>,
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => AppConfig::load(path)?,
        None => AppConfig::default(),
    };
    match &cli.command {
        Command::Skr(args) => cmd_skr(&config, args, stdout),
        Command::Compare(args) => cmd_compare(&config, args, stdout),
        Command::Sweep(args) => cmd_sweep(&config, args, stdout),
        Command::Ingest(args) => cmd_ingest(args, stdout),
    }
}

struct Model {
    profile: SkrProfile,
    ring: RingSpec,
    reading: ScheduleReading,
}

fn resolve(config: &AppConfig, args: &ModelArgs) -> Result<Model> {
    let profile = config.profile(&args.profile)?;
    let mut ring = config.ring_spec()?;
    if let Some(alpha) = args.alpha_db_per_km {
        ring.alpha_db_per_km = alpha;
    }
    if let Some(penalty) = args.penalty_db {
        ring.switch_penalty_db = penalty;
    }
    ring.adjacent_uses_chord |= args.adjacent_uses_chord;
    let reading = match (&args.gs_reading, args.gs_factor_two) {
        (Some(name), _) => parse_reading(name)?,
        (None, true) => ScheduleReading::FactorTwo,
        (None, false) => config.reading()?,
    };
    Ok(Model {
        profile,
        ring,
        reading,
    })
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn print_json(value: &impl Serialize, stdout: &mut dyn Write) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_output(None, &text, stdout)
}

fn cmd_skr(config: &AppConfig, args: &SkrArgs, stdout: &mut dyn Write) -> Result<i32> {
    let profile = config.profile(&args.profile)?;
    let alpha = args.alpha_db_per_km.unwrap_or(config.ring.alpha_db_per_km);
    let csv = skr_curve_csv(&profile, args.a_max_db, args.step_db, alpha)?;
    write_output(args.out.as_deref(), &csv, stdout)?;
    Ok(0)
}

fn cmd_compare(config: &AppConfig, args: &CompareArgs, stdout: &mut dyn Write) -> Result<i32> {
    let Model {
        profile,
        mut ring,
        reading,
    } = resolve(config, &args.model)?;
    if let Some(n) = args.nodes {
        ring.n_nodes = n;
    }
    if let Some(len) = args.length_km {
        ring.adjacent_len_km = len;
    }
    ring.validate()?;

    let g_relayed = capacity::relayed_rate(&ring, &profile)?;
    let g_switched = capacity::switched_rate(&ring, &profile, reading)?;
    let schedule = capacity::switched_schedule(&ring, &profile, 0, reading)?;
    let r = capacity::normalized_difference(g_switched, g_relayed)?;

    let shares: Vec<_> = schedule
        .fractions()
        .zip(&schedule.shares)
        .map(|((peer, share), s)| {
            json!({ "peer": peer, "share": share, "time_s": s.time, "link_rate_bps": s.link_rate_bps })
        })
        .collect();
    let doc = json!({
        "profile": profile.name,
        "n_nodes": ring.n_nodes,
        "adjacent_len_km": ring.adjacent_len_km,
        "gs_reading": reading.name(),
        "g_relayed_bps": g_relayed,
        "g_switched_bps": g_switched,
        "r": r,
        "schedule": shares,
    });
    print_json(&doc, stdout)?;
    Ok(0)
}

fn cmd_sweep(config: &AppConfig, args: &SweepArgs, stdout: &mut dyn Write) -> Result<i32> {
    let Model {
        profile,
        ring,
        reading,
    } = resolve(config, &args.model)?;
    let spec = SweepSpec {
        n_range: args.n_min..=args.n_max,
        lengths: LengthAxis {
            start_km: args.len_min,
            end_km: args.len_max,
            step_km: args.len_step,
        },
        alpha_db_per_km: ring.alpha_db_per_km,
        switch_penalty_db: ring.switch_penalty_db,
        adjacent_uses_chord: ring.adjacent_uses_chord,
        reading,
    };
    let grid = run_sweep(&spec, &profile)?;
    write_output(args.out.as_deref(), &emit(&grid, args.format)?, stdout)?;
    Ok(0)
}

#[derive(Serialize)]
struct DropDoc<'a> {
    matched: &'a str,
    unmatched: &'a str,
    db_drop: f64,
}

#[derive(Serialize)]
struct FailureDoc {
    path: String,
    error: String,
}

fn cmd_ingest(args: &IngestArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mut summaries: Vec<LinkSummary> = Vec::new();
    let mut failures = Vec::new();
    for path in &args.paths {
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let result = read_log(path).and_then(|series| Ok(summarize(&series, &label)?));
        match result {
            Ok(summary) => summaries.push(summary),
            Err(e) => failures.push(FailureDoc {
                path: path.display().to_string(),
                error: match e {
                    Error::Io { .. } => e.to_string(),
                    other => format!("{}: {other}", path.display()),
                },
            }),
        }
    }

    let mut drops = Vec::new();
    for pair in &args.pairs {
        let Some((matched, unmatched)) = pair.split_once(':') else {
            failures.push(FailureDoc {
                path: String::new(),
                error: format!("pair `{pair}` is not MATCHED:UNMATCHED"),
            });
            continue;
        };
        let find = |label: &str| summaries.iter().find(|s| s.label == label);
        match (find(matched), find(unmatched)) {
            (Some(m), Some(u)) => match db_drop(m, u) {
                Ok(db) => drops.push(DropDoc {
                    matched,
                    unmatched,
                    db_drop: db,
                }),
                Err(e) => failures.push(FailureDoc {
                    path: String::new(),
                    error: format!("{pair}: {e}"),
                }),
            },
            _ => failures.push(FailureDoc {
                path: String::new(),
                error: format!("pair `{pair}`: no summary for one of the labels"),
            }),
        }
    }

    let doc = json!({
        "summaries": summaries.iter().map(SummaryDoc::from).collect::<Vec<_>>(),
        "drops": drops,
        "errors": failures,
    });
    print_json(&doc, stdout)?;
    for f in &failures {
        eprintln!("error: {}", f.error);
    }
    Ok(if failures.is_empty() { 0 } else { 1 })
}
