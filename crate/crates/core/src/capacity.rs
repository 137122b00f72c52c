//! Fair per-pair key rates of relayed and switched rings.
//!
//! In a relayed ring each adjacent QKD link carries the key of every node
//! pair whose shortest path crosses it, so the bottleneck link rate is split
//! `pairs_per_link(N)` ways. In a switched ring each node time-shares its
//! transceivers over all `N - 1` peers, dwelling on peer `j` for
//! `T_ij = 2 / f(A_ij)` so that slow (long) links get proportionally more
//! time and every pair ends up with the same rate.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::skr::KeyRateModel;
use crate::topology::{relayed_link_budget, switched_link_budget, RingSpec};

/// Number of node pairs routed over each link of an `n`-node relayed ring.
///
/// `(N² - 1)/8` for odd `N`. For even `N` antipodal pairs split their load
/// evenly over both shortest paths, giving `N²/8` (a multiple of 1/2).
pub fn pairs_per_link(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain {
            what: "node count",
            value: n as f64,
        });
    }
    let n2 = (n * n) as f64;
    Ok(if n % 2 == 1 {
        (n2 - 1.0) / 8.0
    } else {
        n2 / 8.0
    })
}

/// Per-link load by routing every pair over its shortest ring path.
///
/// Independent check of [`pairs_per_link`] for `3 <= n <= 64`. Ties split
/// the load half-and-half over both directions.
pub fn brute_force_pairs_per_link(n: usize) -> Result<f64> {
    if !(3..=64).contains(&n) {
        return Err(Error::Domain {
            what: "node count",
            value: n as f64,
        });
    }
    // Loads in half-pair units so ties stay integral. Link `l` joins l and l+1.
    let mut load = vec![0u64; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let clockwise = j - i;
            let counter = n - clockwise;
            let (cw_share, ccw_share) = match clockwise.cmp(&counter) {
                core::cmp::Ordering::Less => (2, 0),
                core::cmp::Ordering::Greater => (0, 2),
                core::cmp::Ordering::Equal => (1, 1),
            };
            for slot in &mut load[i..j] {
                *slot += cw_share;
            }
            let (head, tail) = load.split_at_mut(j);
            for slot in tail.iter_mut().chain(&mut head[..i]) {
                *slot += ccw_share;
            }
        }
    }
    assert!(
        load.iter().all(|&x| x == load[0]),
        "ring load not uniform: {load:?}"
    );
    Ok(load[0] as f64 / 2.0)
}

/// Fair relayed rate `G_R = f(A_e) / pairs_per_link(N)`.
pub fn relayed_rate<M: KeyRateModel + ?Sized>(spec: &RingSpec, model: &M) -> Result<f64> {
    spec.validate()?;
    let f = model.rate_bps(relayed_link_budget(spec).attenuation_db)?;
    Ok(f / pairs_per_link(spec.n_nodes)?)
}

/// How a node's time-share cycle `T_i = Σ_j T_ij` converts into a per-pair
/// rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScheduleReading {
    /// `G_S = 1 / T_i`, the formula as printed.
    Verbatim,
    /// `G_S = 2 / T_i`: each slot of length `2/f` yields two key units.
    FactorTwo,
    /// `G_S = 4 / T_i`: a node's Alice and Bob run concurrently, each serving
    /// half of the peers, so one key unit per pair takes `T_i / 4`. For equal
    /// links this divides a link's rate by `(N - 1)/2`.
    #[default]
    TransceiverSplit,
}

impl ScheduleReading {
    pub const fn keys_per_cycle(self) -> f64 {
        match self {
            ScheduleReading::Verbatim => 1.0,
            ScheduleReading::FactorTwo => 2.0,
            ScheduleReading::TransceiverSplit => 4.0,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            ScheduleReading::Verbatim => "verbatim",
            ScheduleReading::FactorTwo => "factor-two",
            ScheduleReading::TransceiverSplit => "transceiver-split",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::Verbatim, Self::FactorTwo, Self::TransceiverSplit]
            .into_iter()
            .find(|r| r.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeerShare {
    pub peer: usize,
    /// Raw time weight `T_ij = 2 / f(A_ij)`, seconds per key unit.
    pub time: f64,
    /// Link rate `f(A_ij)` during the slot.
    pub link_rate_bps: f64,
}

/// Time-share schedule of one node of a switched ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchSchedule {
    pub node: usize,
    pub shares: Vec<PeerShare>,
    /// `T_i = Σ_j T_ij`.
    pub total: f64,
    /// Fair per-pair rate `G_S`.
    pub fair_rate: f64,
}

impl SwitchSchedule {
    /// Normalized fractions `T_ij / T_i` in peer order.
    pub fn fractions(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.shares
            .iter()
            .map(move |s| (s.peer, s.time / self.total))
    }
}

pub fn switched_schedule<M: KeyRateModel + ?Sized>(
    spec: &RingSpec,
    model: &M,
    node: usize,
    reading: ScheduleReading,
) -> Result<SwitchSchedule> {
    spec.validate()?;
    let mut shares = Vec::with_capacity(spec.n_nodes - 1);
    for peer in (0..spec.n_nodes).filter(|&j| j != node) {
        let budget = switched_link_budget(spec, node, peer)?;
        let rate = model.rate_bps(budget.attenuation_db)?;
        if rate <= 0.0 {
            return Err(Error::InfeasibleSchedule {
                node,
                peer,
                attenuation_db: budget.attenuation_db,
            });
        }
        shares.push(PeerShare {
            peer,
            time: 2.0 / rate,
            link_rate_bps: rate,
        });
    }
    let total: f64 = shares.iter().map(|s| s.time).sum();
    Ok(SwitchSchedule {
        node,
        shares,
        total,
        fair_rate: reading.keys_per_cycle() / total,
    })
}

/// Fair switched rate `G_S`, checked to agree at every node.
pub fn switched_rate<M: KeyRateModel + ?Sized>(
    spec: &RingSpec,
    model: &M,
    reading: ScheduleReading,
) -> Result<f64> {
    let reference = switched_schedule(spec, model, 0, reading)?.fair_rate;
    for node in 1..spec.n_nodes {
        let rate = switched_schedule(spec, model, node, reading)?.fair_rate;
        if (rate - reference).abs() > 1e-12 * reference {
            return Err(Error::AsymmetricSchedule {
                node,
                rate,
                reference,
            });
        }
    }
    Ok(reference)
}

/// `R = (G_S - G_R) / max(G_S, G_R)`, in `[-1, 1]`.
pub fn normalized_difference(g_s: f64, g_r: f64) -> Result<f64> {
    for v in [g_s, g_r] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::Domain {
                what: "rate (bits/s)",
                value: v,
            });
        }
    }
    let max = g_s.max(g_r);
    if max == 0.0 {
        return Err(Error::UndefinedComparison);
    }
    Ok((g_s - g_r) / max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonResult {
    pub g_relayed: f64,
    /// Zero when the switched schedule is infeasible.
    pub g_switched: f64,
    /// `None` when both rates are zero.
    pub r: Option<f64>,
}

/// Evaluates both architectures on one ring. Infeasible switched schedules
/// count as `G_S = 0`.
pub fn compare<M: KeyRateModel + ?Sized>(
    spec: &RingSpec,
    model: &M,
    reading: ScheduleReading,
) -> Result<ComparisonResult> {
    let g_relayed = relayed_rate(spec, model)?;
    let g_switched = match switched_rate(spec, model, reading) {
        Ok(g) => g,
        Err(Error::InfeasibleSchedule { .. }) => 0.0,
        Err(e) => return Err(e),
    };
    let r = match normalized_difference(g_switched, g_relayed) {
        Ok(r) => Some(r),
        Err(Error::UndefinedComparison) => None,
        Err(e) => return Err(e),
    };
    Ok(ComparisonResult {
        g_relayed,
        g_switched,
        r,
    })
}
