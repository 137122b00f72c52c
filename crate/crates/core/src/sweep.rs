//! `(N, L)` parameter grids of the relayed/switched comparison.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::capacity::{compare, ComparisonResult, ScheduleReading};
use crate::error::{Error, Result};
use crate::skr::SkrProfile;
use crate::topology::{RingSpec, DEFAULT_ALPHA_DB_PER_KM, DEFAULT_SWITCH_PENALTY_DB};

/// Inclusive, evenly stepped axis of adjacent link lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthAxis {
    pub start_km: f64,
    pub end_km: f64,
    pub step_km: f64,
}

impl LengthAxis {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.step_km > 0.0 && self.step_km.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "len_step_km",
                value: self.step_km,
            });
        }
        if !(self.start_km > 0.0) || !(self.end_km >= self.start_km) || !self.end_km.is_finite() {
            return Err(Error::EmptyRange { what: "length" });
        }
        // Tolerance keeps the end point when (end - start)/step is integral.
        let count = libm::floor((self.end_km - self.start_km) / self.step_km + 1e-9) as usize + 1;
        Ok((0..count)
            .map(|i| self.start_km + i as f64 * self.step_km)
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_range: RangeInclusive<usize>,
    pub lengths: LengthAxis,
    pub alpha_db_per_km: f64,
    pub switch_penalty_db: f64,
    pub adjacent_uses_chord: bool,
    pub reading: ScheduleReading,
}

impl Default for SweepSpec {
    /// N from 5 to 30, L from 1 to 20 km in 0.5 km steps.
    fn default() -> Self {
        SweepSpec {
            n_range: 5..=30,
            lengths: LengthAxis {
                start_km: 1.0,
                end_km: 20.0,
                step_km: 0.5,
            },
            alpha_db_per_km: DEFAULT_ALPHA_DB_PER_KM,
            switch_penalty_db: DEFAULT_SWITCH_PENALTY_DB,
            adjacent_uses_chord: false,
            reading: ScheduleReading::default(),
        }
    }
}

impl SweepSpec {
    pub fn ring(&self, n_nodes: usize, adjacent_len_km: f64) -> RingSpec {
        RingSpec {
            n_nodes,
            adjacent_len_km,
            alpha_db_per_km: self.alpha_db_per_km,
            switch_penalty_db: self.switch_penalty_db,
            adjacent_uses_chord: self.adjacent_uses_chord,
        }
    }
}

/// Comparison results over the grid, row-major by `N` then length.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub profile: String,
    pub n_values: Vec<usize>,
    pub lengths_km: Vec<f64>,
    pub cells: Vec<ComparisonResult>,
}

impl SweepGrid {
    pub fn cell(&self, n_index: usize, len_index: usize) -> &ComparisonResult {
        &self.cells[n_index * self.lengths_km.len() + len_index]
    }

    /// Looks a cell up by its axis values.
    pub fn at(&self, n: usize, length_km: f64) -> Option<&ComparisonResult> {
        let ni = self.n_values.iter().position(|&v| v == n)?;
        let li = self
            .lengths_km
            .iter()
            .position(|&v| (v - length_km).abs() < 1e-9)?;
        Some(self.cell(ni, li))
    }

    /// `(n, length_km, cell)` in row-major order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64, &ComparisonResult)> + '_ {
        let width = self.lengths_km.len();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.n_values[k / width], self.lengths_km[k % width], c))
    }
}

pub fn run_sweep(spec: &SweepSpec, profile: &SkrProfile) -> Result<SweepGrid> {
    let n_values: Vec<usize> = spec.n_range.clone().collect();
    if n_values.is_empty() {
        return Err(Error::EmptyRange { what: "node count" });
    }
    let lengths_km = spec.lengths.values()?;
    let mut cells = Vec::with_capacity(n_values.len() * lengths_km.len());
    for &n in &n_values {
        for &len in &lengths_km {
            let ring = spec.ring(n, len);
            ring.validate()?;
            cells.push(compare(&ring, profile, spec.reading)?);
        }
    }
    Ok(SweepGrid {
        profile: profile.name.clone(),
        n_values,
        lengths_km,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub length_km: f64,
    /// Largest `N` at which switched beats relayed.
    pub max_n: Option<usize>,
}

pub fn crossover_curve(grid: &SweepGrid) -> Vec<Crossover> {
    grid.lengths_km
        .iter()
        .enumerate()
        .map(|(li, &length_km)| {
            let max_n = grid
                .n_values
                .iter()
                .enumerate()
                .filter(|&(ni, _)| grid.cell(ni, li).r.is_some_and(|r| r > 0.0))
                .map(|(_, &n)| n)
                .max();
            Crossover { length_km, max_n }
        })
        .collect()
}
