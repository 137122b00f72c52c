//! Synthetic key-rate logs for the matched/unmatched device pairs.
//!
//! The unmatched pairs run at constant rates that integrate to the reported
//! 18 h totals (221 Mbit for A1-B2, 1.8 Gbit for A2-B1). Their matched
//! counterparts are scaled up by the reported penalty: 21 dB for A1-B1
//! ("more than 20 dB") and 14 dB for A2-B2.

use ringqkd::keylog::write_log;
use ringqkd_core::ingest::KeyLogRecord;

pub const EIGHTEEN_HOURS_S: f64 = 18.0 * 3600.0;
pub const A1B2_RATE_BPS: f64 = 2.21e8 / EIGHTEEN_HOURS_S;
pub const A2B1_RATE_BPS: f64 = 1.8e9 / EIGHTEEN_HOURS_S;
pub const A1_PENALTY_DB: f64 = 21.0;
pub const A2_PENALTY_DB: f64 = 14.0;

pub fn constant_log(rate_bps: f64, qber: f64) -> String {
    let records: Vec<KeyLogRecord> = (0..=1080)
        .map(|i| KeyLogRecord {
            t_s: f64::from(i) * 60.0,
            skr_bps: rate_bps,
            qber: Some(qber),
        })
        .collect();
    format!(
        "# synthetic constant-rate log, 18 h at 60 s\n{}",
        write_log(&records)
    )
}

/// `(label, csv text)` for A1B1, A1B2, A2B2, A2B1.
pub fn device_pair_logs() -> Vec<(&'static str, String)> {
    let boost = |db: f64| 10f64.powf(db / 10.0);
    vec![
        (
            "A1B1",
            constant_log(A1B2_RATE_BPS * boost(A1_PENALTY_DB), 0.031),
        ),
        ("A1B2", constant_log(A1B2_RATE_BPS, 0.072)),
        (
            "A2B2",
            constant_log(A2B1_RATE_BPS * boost(A2_PENALTY_DB), 0.029),
        ),
        ("A2B1", constant_log(A2B1_RATE_BPS, 0.054)),
    ]
}
