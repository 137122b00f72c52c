//! Key-rate log CSV (`t_s,skr_bps,qber`) and link summary JSON.
//!
//! The `qber` column is optional, as is any individual `qber` cell. Lines
//! starting with `#` are comments.

use std::path::Path;

use ringqkd_core::ingest::{KeyLogRecord, LinkSummary};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const HEADER: [&str; 3] = ["t_s", "skr_bps", "qber"];

pub fn parse_log(text: &str) -> Result<Vec<KeyLogRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(text.as_bytes());

    let header = reader.headers().map_err(csv_error)?.clone();
    let has_qber = match header.len() {
        2 | 3 if header.iter().zip(HEADER).all(|(h, want)| h == want) => header.len() == 3,
        _ => {
            let line = text
                .lines()
                .position(|l| !l.trim_start().starts_with('#'))
                .map_or(1, |i| i as u64 + 1);
            return Err(Error::parse(
                line,
                format!(
                    "expected header `t_s,skr_bps[,qber]`, found `{}`",
                    join(&header)
                ),
            ));
        }
    };

    let mut records: Vec<KeyLogRecord> = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> Result<f64> {
            let raw = &row[i];
            raw.parse::<f64>()
                .map_err(|_| Error::parse(line, format!("{name}: cannot parse `{raw}`")))
        };
        let rec = KeyLogRecord {
            t_s: field(0, "t_s")?,
            skr_bps: field(1, "skr_bps")?,
            qber: if has_qber && !row[2].is_empty() {
                Some(field(2, "qber")?)
            } else {
                None
            },
        };
        rec.check().map_err(|reason| Error::parse(line, reason))?;
        if let Some(prev) = records.last() {
            if rec.t_s <= prev.t_s {
                return Err(Error::parse(
                    line,
                    format!("timestamp {} not after previous {}", rec.t_s, prev.t_s),
                ));
            }
        }
        records.push(rec);
    }
    if records.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(records)
}

pub fn read_log(path: &Path) -> Result<Vec<KeyLogRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_log(&text)
}

/// Writes records in the log format; values round-trip exactly.
pub fn write_log(records: &[KeyLogRecord]) -> String {
    let mut out = String::from("t_s,skr_bps,qber\n");
    for r in records {
        let qber = r.qber.map(|q| q.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{}\n", r.t_s, r.skr_bps, qber));
    }
    out
}

fn join(record: &csv::StringRecord) -> String {
    record.iter().collect::<Vec<_>>().join(",")
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::parse(line, e.to_string())
}

/// JSON shape of a [`LinkSummary`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub label: String,
    pub mean_skr_bps: f64,
    pub mean_qber: Option<f64>,
    pub duration_s: f64,
    pub total_key_bits: f64,
}

impl From<&LinkSummary> for SummaryDoc {
    fn from(s: &LinkSummary) -> Self {
        SummaryDoc {
            label: s.label.clone(),
            mean_skr_bps: s.mean_skr_bps,
            mean_qber: s.mean_qber,
            duration_s: s.duration_s,
            total_key_bits: s.total_key_bits,
        }
    }
}
