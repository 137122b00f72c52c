//! Summary statistics of device key-rate logs.

use alloc::string::String;

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyLogRecord {
    /// Timestamp in seconds (epoch or elapsed).
    pub t_s: f64,
    pub skr_bps: f64,
    pub qber: Option<f64>,
}

impl KeyLogRecord {
    pub fn check(&self) -> core::result::Result<(), &'static str> {
        if !self.t_s.is_finite() {
            return Err("timestamp is not finite");
        }
        if !(self.skr_bps >= 0.0 && self.skr_bps.is_finite()) {
            return Err("skr_bps must be a finite value >= 0");
        }
        if let Some(q) = self.qber {
            if !(0.0..=0.5).contains(&q) {
                return Err("qber must lie in [0, 0.5]");
            }
        }
        Ok(())
    }
}

/// Checks record ranges and strictly increasing timestamps.
pub fn validate_series(series: &[KeyLogRecord]) -> Result<()> {
    for (index, rec) in series.iter().enumerate() {
        rec.check()
            .map_err(|reason| Error::InvalidRecord { index, reason })?;
        if index > 0 && rec.t_s <= series[index - 1].t_s {
            return Err(Error::InvalidRecord {
                index,
                reason: "timestamp not increasing",
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkSummary {
    pub label: String,
    pub mean_skr_bps: f64,
    /// Mean over the records that carry a QBER value.
    pub mean_qber: Option<f64>,
    pub duration_s: f64,
    /// Trapezoidal integral of the rate over time.
    pub total_key_bits: f64,
}

pub fn summarize(series: &[KeyLogRecord], label: &str) -> Result<LinkSummary> {
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: series.len(),
        });
    }
    validate_series(series)?;

    let n = series.len() as f64;
    let mean_skr_bps = series.iter().map(|r| r.skr_bps).sum::<f64>() / n;
    let (qber_sum, qber_count) = series
        .iter()
        .filter_map(|r| r.qber)
        .fold((0.0, 0usize), |(s, c), q| (s + q, c + 1));
    let mean_qber = (qber_count > 0).then(|| qber_sum / qber_count as f64);

    let total_key_bits = series
        .windows(2)
        .map(|w| (w[1].t_s - w[0].t_s) * 0.5 * (w[0].skr_bps + w[1].skr_bps))
        .sum();

    Ok(LinkSummary {
        label: label.into(),
        mean_skr_bps,
        mean_qber,
        duration_s: series[series.len() - 1].t_s - series[0].t_s,
        total_key_bits,
    })
}

/// Matched-to-unmatched rate penalty, `10·log10(matched / unmatched)` dB.
pub fn db_drop(matched: &LinkSummary, unmatched: &LinkSummary) -> Result<f64> {
    for s in [matched, unmatched] {
        if !(s.mean_skr_bps > 0.0) {
            return Err(Error::Domain {
                what: "mean key rate (bits/s)",
                value: s.mean_skr_bps,
            });
        }
    }
    Ok(10.0 * math::log10(matched.mean_skr_bps / unmatched.mean_skr_bps))
}
