//! Field-strength sweeps, reference-data ingestion and figure tables.

mod compare;
mod data;
mod fit;
mod table;

pub use compare::{compare, ComparisonReport, Estimator, ResidualPoint};
pub use data::{load_measurements, parse_measurements, MeasurementRecord, MeasurementSet};
pub use fit::{linear_fit, LinearFit};
pub use table::{figure_table, format_number, json_number, sweep_table, Cell, Figure, Table, TableMeta};

use rayon::prelude::*;
use serde::Serialize;

use crate::atom::AtomModel;
use crate::barrier::BarrierGeometry;
use crate::clocks::{self, TunnelClocks};
use crate::error::{Error, Result};
use crate::units::{Time, CONSTANTS};

/// Time for light to cross a distance `d` (au), in au.
pub fn light_traversal_time(d: f64) -> Result<f64> {
    if !(d >= 0.0 && d.is_finite()) {
        return Err(Error::invalid(format!("distance must be finite and >= 0, got {d}")));
    }
    Ok(d / CONSTANTS.speed_of_light)
}

/// Every estimator of a [`TunnelClocks`] in attoseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimesAs {
    pub tau_i: Option<f64>,
    pub tau_d: Option<f64>,
    pub tau_sym: f64,
    pub tau_unsy: Option<f64>,
    pub tau_c: f64,
    pub tau_t: Option<f64>,
    pub tau_a: f64,
    pub tau_d_re: Option<f64>,
    pub tau_d_im: Option<f64>,
    pub tau_i_re: Option<f64>,
    pub tau_i_im: Option<f64>,
}

impl From<&TunnelClocks> for TimesAs {
    fn from(c: &TunnelClocks) -> Self {
        let as_ = |t: Option<Time>| t.map(Time::attoseconds);
        let part = |v: f64| Time::from_au(v).attoseconds();
        let cp = c.complex_parts;
        TimesAs {
            tau_i: as_(c.tau_i),
            tau_d: as_(c.tau_d),
            tau_sym: c.tau_sym.attoseconds(),
            tau_unsy: as_(c.tau_unsy),
            tau_c: c.tau_c.attoseconds(),
            tau_t: as_(c.tau_t),
            tau_a: c.tau_a.attoseconds(),
            tau_d_re: cp.map(|p| part(p.tau_d.re)),
            tau_d_im: cp.map(|p| part(p.tau_d.im)),
            tau_i_re: cp.map(|p| part(p.tau_i.re)),
            tau_i_im: cp.map(|p| part(p.tau_i.im)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub f: f64,
    pub geometry: BarrierGeometry,
    pub clocks: TunnelClocks,
    pub times_as: TimesAs,
    /// `d_B/c` in attoseconds; absent when the barrier has no real crossings.
    pub light_traversal_as: Option<f64>,
    pub keldysh_gamma: Option<f64>,
}

impl SweepRow {
    pub fn evaluate(atom: &AtomModel, f: f64, omega: Option<f64>) -> Result<SweepRow> {
        let geometry = BarrierGeometry::solve(atom, f)?;
        let clocks = TunnelClocks::evaluate(atom, &geometry);
        let light_traversal_as = match geometry.barrier_width {
            Some(d) => Some(Time::from_au(light_traversal_time(d)?).attoseconds()),
            None => None,
        };
        let keldysh_gamma = omega.map(|w| clocks::keldysh_gamma(atom, f, w)).transpose()?;
        Ok(SweepRow { f, times_as: TimesAs::from(&clocks), geometry, clocks, light_traversal_as, keldysh_gamma })
    }
}

/// Evaluates every estimator on a strictly ascending grid of positive fields.
/// Grid points are evaluated in parallel; rows come back in grid order.
pub fn run_sweep(atom: &AtomModel, grid: &[f64], omega: Option<f64>) -> Result<Vec<SweepRow>> {
    validate_grid(grid)?;
    grid.par_iter().map(|&f| SweepRow::evaluate(atom, f, omega)).collect()
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("field grid is empty"));
    }
    if let Some(bad) = grid.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(Error::invalid(format!("grid values must be finite and > 0, got {bad}")));
    }
    if let Some(w) = grid.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!("grid must be strictly ascending, got {} then {}", w[0], w[1])));
    }
    Ok(())
}

/// Parses `MIN:MAX:STEP` (inclusive of MAX up to rounding) or `F1,F2,...`.
/// Explicit lists are sorted and deduplicated.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let number = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| Error::invalid(format!("`{s}` in grid `{spec}` is not a number")))
    };
    let grid = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [min, max, step] = parts[..] else {
            return Err(Error::invalid(format!("range grid must be MIN:MAX:STEP, got `{spec}`")));
        };
        let (min, max, step) = (number(min)?, number(max)?, number(step)?);
        if !(step > 0.0) || !(max >= min) || !step.is_finite() {
            return Err(Error::invalid(format!("range grid needs MAX >= MIN and STEP > 0, got `{spec}`")));
        }
        let n = ((max - min) / step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| min + i as f64 * step).collect()
    } else {
        let mut values = spec.split(',').map(number).collect::<Result<Vec<_>>>()?;
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    };
    validate_grid(&grid)?;
    Ok(grid)
}
