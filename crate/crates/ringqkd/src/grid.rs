//! Sweep grid and key-rate curve output.
//!
//! CSV columns are explicit so plotting tools can consume the files without
//! pivoting. Numbers carry 9 significant digits; a cell where both rates are
//! zero has `nan` in `r`.

use std::fmt::Write as _;

use ringqkd_core::capacity::ComparisonResult;
use ringqkd_core::skr::{skr_bps, SkrProfile};
use ringqkd_core::sweep::SweepGrid;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GRID_CSV_HEADER: &str = "n,length_km,g_switched_bps,g_relayed_bps,r";
pub const SKR_CSV_HEADER: &str = "a_db,distance_km_at_alpha,skr_bps";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Formats `x` like C's `%.9g`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        strip_zeros(&fixed).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to the value that survives a CSV write/read cycle.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().expect("formatted float parses")
}

pub fn grid_to_csv(grid: &SweepGrid) -> String {
    let mut out = String::with_capacity(48 * (grid.cells.len() + 1));
    out.push_str(GRID_CSV_HEADER);
    out.push('\n');
    for (n, len, c) in grid.rows() {
        let _ = writeln!(
            out,
            "{n},{},{},{},{}",
            format_sig(len),
            format_sig(c.g_switched),
            format_sig(c.g_relayed),
            format_sig(c.r.unwrap_or(f64::NAN)),
        );
    }
    out
}

/// Rebuilds a grid from [`grid_to_csv`] output. Axes are recovered from the
/// row order; `profile` labels the result.
pub fn grid_from_csv(text: &str, profile: &str) -> Result<SweepGrid> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == GRID_CSV_HEADER => {}
        _ => {
            return Err(Error::parse(
                1,
                format!("expected header `{GRID_CSV_HEADER}`"),
            ))
        }
    }
    let mut n_values: Vec<usize> = Vec::new();
    let mut lengths_km: Vec<f64> = Vec::new();
    let mut cells = Vec::new();
    for (idx, line) in lines {
        let line_no = idx as u64 + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::parse(
                line_no,
                format!("expected 5 fields, got {}", fields.len()),
            ));
        }
        let num = |i: usize| -> Result<f64> {
            fields[i]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("cannot parse `{}`", fields[i])))
        };
        let n: usize = fields[0].parse().map_err(|_| {
            Error::parse(line_no, format!("cannot parse node count `{}`", fields[0]))
        })?;
        let len = num(1)?;
        if n_values.last() != Some(&n) {
            let row_done = n_values.is_empty() || cells.len() % lengths_km.len() == 0;
            if !row_done || n_values.contains(&n) {
                return Err(Error::parse(line_no, "rows are not a row-major grid"));
            }
            n_values.push(n);
        }
        if n_values.len() == 1 {
            lengths_km.push(len);
        }
        let expected = lengths_km
            .get(cells.len() % lengths_km.len().max(1))
            .copied();
        if n_values.len() > 1 && expected != Some(len) {
            return Err(Error::parse(line_no, "rows are not a row-major grid"));
        }
        let r = num(4)?;
        cells.push(ComparisonResult {
            g_switched: num(2)?,
            g_relayed: num(3)?,
            r: (!r.is_nan()).then_some(r),
        });
    }
    if cells.len() != n_values.len() * lengths_km.len() {
        return Err(Error::parse(text.lines().count() as u64, "incomplete grid"));
    }
    Ok(SweepGrid {
        profile: profile.into(),
        n_values,
        lengths_km,
        cells,
    })
}

/// JSON shape of a grid: axes plus row-major value arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDoc {
    pub profile: String,
    pub n_values: Vec<usize>,
    pub lengths_km: Vec<f64>,
    pub g_switched_bps: Vec<f64>,
    pub g_relayed_bps: Vec<f64>,
    /// `null` where both rates are zero.
    pub r: Vec<Option<f64>>,
}

impl From<&SweepGrid> for GridDoc {
    fn from(g: &SweepGrid) -> Self {
        GridDoc {
            profile: g.profile.clone(),
            n_values: g.n_values.clone(),
            lengths_km: g.lengths_km.clone(),
            g_switched_bps: g.cells.iter().map(|c| c.g_switched).collect(),
            g_relayed_bps: g.cells.iter().map(|c| c.g_relayed).collect(),
            r: g.cells.iter().map(|c| c.r).collect(),
        }
    }
}

impl GridDoc {
    pub fn into_grid(self) -> Result<SweepGrid> {
        let size = self.n_values.len() * self.lengths_km.len();
        if [
            self.g_switched_bps.len(),
            self.g_relayed_bps.len(),
            self.r.len(),
        ]
        .iter()
        .any(|&l| l != size)
        {
            return Err(Error::Config(format!(
                "grid arrays must have {size} entries"
            )));
        }
        let cells = (0..size)
            .map(|k| ComparisonResult {
                g_switched: self.g_switched_bps[k],
                g_relayed: self.g_relayed_bps[k],
                r: self.r[k],
            })
            .collect();
        Ok(SweepGrid {
            profile: self.profile,
            n_values: self.n_values,
            lengths_km: self.lengths_km,
            cells,
        })
    }
}

pub fn grid_to_json(grid: &SweepGrid) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&GridDoc::from(grid))?;
    s.push('\n');
    Ok(s)
}

pub fn emit(grid: &SweepGrid, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(grid_to_csv(grid)),
        Format::Json => grid_to_json(grid),
    }
}

/// `f(a)` sampled from 0 to `a_max_db` in `step_db` increments.
pub fn skr_curve_csv(
    profile: &SkrProfile,
    a_max_db: f64,
    step_db: f64,
    alpha_db_per_km: f64,
) -> Result<String> {
    if !(step_db > 0.0 && step_db.is_finite()) {
        return Err(Error::Config(format!("step_db must be > 0, got {step_db}")));
    }
    if !(a_max_db >= 0.0 && a_max_db.is_finite()) {
        return Err(Error::Config(format!(
            "a_max_db must be >= 0, got {a_max_db}"
        )));
    }
    if !(alpha_db_per_km > 0.0) {
        return Err(Error::Config(format!(
            "alpha_db_per_km must be > 0, got {alpha_db_per_km}"
        )));
    }
    let rows = (a_max_db / step_db + 1e-9).floor() as usize + 1;
    let mut out = String::from(SKR_CSV_HEADER);
    out.push('\n');
    for i in 0..rows {
        let a = i as f64 * step_db;
        let rate = skr_bps(&profile.params, a)?;
        let _ = writeln!(
            out,
            "{},{},{}",
            format_sig(a),
            format_sig(a / alpha_db_per_km),
            format_sig(rate)
        );
    }
    Ok(out)
}
