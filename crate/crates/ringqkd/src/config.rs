//! Shared JSON configuration: profile overrides, ring defaults and flags.
//!
//! ```json
//! {
//!   "profiles": [{"name": "experimental", "eta_bob": 0.07}],
//!   "ring": {"n_nodes": 10, "adjacent_len_km": 5.0},
//!   "flags": {"adjacent_uses_chord": false, "gs_factor_two": false}
//! }
//! ```
//!
//! Unknown keys are rejected everywhere.

use std::collections::BTreeSet;
use std::path::Path;

use ringqkd_core::capacity::ScheduleReading;
use ringqkd_core::skr::{DecoyParams, SkrProfile};
use ringqkd_core::topology::{RingSpec, DEFAULT_ALPHA_DB_PER_KM, DEFAULT_SWITCH_PENALTY_DB};
use serde::Deserialize;

use crate::error::{Error, Result};

/// One profile entry. Entries naming a built-in profile override only the
/// fields they set; new profiles must set every field but `max_skr_bps`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub name: String,
    pub mu: Option<f64>,
    pub y0: Option<f64>,
    pub e_det: Option<f64>,
    pub eta_bob: Option<f64>,
    pub q: Option<f64>,
    pub f_ec: Option<f64>,
    pub pulse_rate_hz: Option<f64>,
    pub max_skr_bps: Option<f64>,
}

impl ProfileDoc {
    fn apply(&self, base: Option<DecoyParams>) -> Result<DecoyParams> {
        let missing = |field: &str| {
            Error::Config(format!("profile `{}`: missing field `{field}`", self.name))
        };
        let pick = |value: Option<f64>, inherited: Option<f64>, field: &str| {
            value.or(inherited).ok_or_else(|| missing(field))
        };
        let params = DecoyParams {
            mu: pick(self.mu, base.map(|b| b.mu), "mu")?,
            y0: pick(self.y0, base.map(|b| b.y0), "y0")?,
            e_det: pick(self.e_det, base.map(|b| b.e_det), "e_det")?,
            eta_bob: pick(self.eta_bob, base.map(|b| b.eta_bob), "eta_bob")?,
            q: pick(self.q, base.map(|b| b.q), "q")?,
            f_ec: pick(self.f_ec, base.map(|b| b.f_ec), "f_ec")?,
            pulse_rate_hz: pick(
                self.pulse_rate_hz,
                base.map(|b| b.pulse_rate_hz),
                "pulse_rate_hz",
            )?,
            max_skr_bps: self.max_skr_bps.or(base.and_then(|b| b.max_skr_bps)),
        };
        params
            .validate()
            .map_err(|e| Error::Config(format!("profile `{}`: {e}", self.name)))?;
        Ok(params)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RingDoc {
    pub n_nodes: usize,
    pub adjacent_len_km: f64,
    pub alpha_db_per_km: f64,
    pub switch_penalty_db: f64,
    pub adjacent_uses_chord: bool,
}

impl Default for RingDoc {
    fn default() -> Self {
        RingDoc {
            n_nodes: 5,
            adjacent_len_km: 10.0,
            alpha_db_per_km: DEFAULT_ALPHA_DB_PER_KM,
            switch_penalty_db: DEFAULT_SWITCH_PENALTY_DB,
            adjacent_uses_chord: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FlagsDoc {
    pub adjacent_uses_chord: bool,
    /// Shorthand for `gs_reading = "factor-two"`.
    pub gs_factor_two: bool,
    pub gs_reading: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AppConfig {
    pub profiles: Vec<ProfileDoc>,
    pub ring: RingDoc,
    pub flags: FlagsDoc,
}

impl AppConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: AppConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for doc in &self.profiles {
            if !seen.insert(doc.name.as_str()) {
                return Err(Error::Config(format!("duplicate profile `{}`", doc.name)));
            }
            self.profile(&doc.name)?;
        }
        self.ring_spec()
            .map_err(|e| Error::Config(format!("ring: {e}")))?;
        self.reading()?;
        Ok(())
    }

    /// Resolves a profile by name: config entries first, then built-ins.
    pub fn profile(&self, name: &str) -> Result<SkrProfile> {
        let builtin = SkrProfile::builtin(name);
        match self.profiles.iter().find(|d| d.name == name) {
            Some(doc) => {
                let params = doc.apply(builtin.map(|p| p.params))?;
                SkrProfile::new(name, params)
                    .map_err(|e| Error::Config(format!("profile `{name}`: {e}")))
            }
            None => builtin.ok_or_else(|| Error::UnknownProfile(name.into())),
        }
    }

    pub fn profile_names(&self) -> Vec<String> {
        let mut names: Vec<String> = SkrProfile::BUILTIN_NAMES
            .iter()
            .map(|s| s.to_string())
            .collect();
        for doc in &self.profiles {
            if !names.contains(&doc.name) {
                names.push(doc.name.clone());
            }
        }
        names
    }

    pub fn ring_spec(&self) -> Result<RingSpec> {
        let spec = RingSpec {
            n_nodes: self.ring.n_nodes,
            adjacent_len_km: self.ring.adjacent_len_km,
            alpha_db_per_km: self.ring.alpha_db_per_km,
            switch_penalty_db: self.ring.switch_penalty_db,
            adjacent_uses_chord: self.ring.adjacent_uses_chord || self.flags.adjacent_uses_chord,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn reading(&self) -> Result<ScheduleReading> {
        let named = match &self.flags.gs_reading {
            Some(name) => Some(parse_reading(name)?),
            None => None,
        };
        match (named, self.flags.gs_factor_two) {
            (Some(r), true) if r != ScheduleReading::FactorTwo => Err(Error::Config(format!(
                "flags: gs_factor_two conflicts with gs_reading `{}`",
                r.name()
            ))),
            (_, true) => Ok(ScheduleReading::FactorTwo),
            (Some(r), false) => Ok(r),
            (None, false) => Ok(ScheduleReading::default()),
        }
    }
}

pub fn parse_reading(name: &str) -> Result<ScheduleReading> {
    ScheduleReading::from_name(name).ok_or_else(|| {
        Error::Config(format!(
            "unknown gs_reading `{name}` (expected verbatim, factor-two or transceiver-split)"
        ))
    })
}
