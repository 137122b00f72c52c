//! Ring geometry and link attenuation budgets.
//!
//! Nodes sit equally spaced on a circle whose circumference is the total ring
//! fiber length `N·L`. Switched (direct) links between nodes `k` hops apart
//! are straight chords of that circle; adjacent nodes reuse the ring fiber
//! unless [`RingSpec::adjacent_uses_chord`] is set.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;

pub const DEFAULT_ALPHA_DB_PER_KM: f64 = 0.21;
pub const DEFAULT_SWITCH_PENALTY_DB: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSpec {
    pub n_nodes: usize,
    /// Fiber length between adjacent nodes, km.
    pub adjacent_len_km: f64,
    pub alpha_db_per_km: f64,
    /// Extra loss on every switched link, dB.
    pub switch_penalty_db: f64,
    /// Use the chord instead of the ring fiber for adjacent switched links.
    pub adjacent_uses_chord: bool,
}

impl RingSpec {
    /// A ring with the default attenuation coefficient and switch penalty.
    pub fn new(n_nodes: usize, adjacent_len_km: f64) -> Result<Self> {
        let spec = RingSpec {
            n_nodes,
            adjacent_len_km,
            alpha_db_per_km: DEFAULT_ALPHA_DB_PER_KM,
            switch_penalty_db: DEFAULT_SWITCH_PENALTY_DB,
            adjacent_uses_chord: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_nodes < 3 {
            return Err(Error::InvalidParameter {
                field: "n_nodes",
                value: self.n_nodes as f64,
            });
        }
        let positive = |field, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter { field, value })
            }
        };
        positive("adjacent_len_km", self.adjacent_len_km)?;
        positive("alpha_db_per_km", self.alpha_db_per_km)?;
        if !(self.switch_penalty_db >= 0.0 && self.switch_penalty_db.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "switch_penalty_db",
                value: self.switch_penalty_db,
            });
        }
        Ok(())
    }

    /// Total fiber length of the ring, km.
    pub fn circumference_km(&self) -> f64 {
        self.n_nodes as f64 * self.adjacent_len_km
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i < self.n_nodes {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "node index",
                value: i as f64,
            })
        }
    }
}

/// One link's length and total loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub endpoints: (usize, usize),
    pub length_km: f64,
    pub attenuation_db: f64,
}

/// Hop distance between two nodes along the shorter arc of an `n`-ring.
pub fn ring_separation(n: usize, i: usize, j: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// Length of the direct link between nodes `hops` apart.
pub fn chord_length(spec: &RingSpec, hops: usize) -> Result<f64> {
    if hops == 0 || hops > spec.n_nodes / 2 {
        return Err(Error::Domain {
            what: "hop separation",
            value: hops as f64,
        });
    }
    if hops == 1 && !spec.adjacent_uses_chord {
        return Ok(spec.adjacent_len_km);
    }
    let n = spec.n_nodes as f64;
    let diameter = spec.circumference_km() / PI;
    Ok(diameter * math::sin(PI * hops as f64 / n))
}

/// Budget of a relayed (adjacent, point-to-point) link.
pub fn relayed_link_budget(spec: &RingSpec) -> LinkBudget {
    LinkBudget {
        endpoints: (0, 1 % spec.n_nodes),
        length_km: spec.adjacent_len_km,
        attenuation_db: spec.adjacent_len_km * spec.alpha_db_per_km,
    }
}

/// Budget of the switched link between nodes `i` and `j`, penalty included.
pub fn switched_link_budget(spec: &RingSpec, i: usize, j: usize) -> Result<LinkBudget> {
    spec.check_node(i)?;
    spec.check_node(j)?;
    if i == j {
        return Err(Error::Domain {
            what: "switched link to self",
            value: i as f64,
        });
    }
    let length_km = chord_length(spec, ring_separation(spec.n_nodes, i, j))?;
    Ok(LinkBudget {
        endpoints: (i, j),
        length_km,
        attenuation_db: length_km * spec.alpha_db_per_km + spec.switch_penalty_db,
    })
}
