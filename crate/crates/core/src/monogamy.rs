//! Monogamy of integer powers of the deficit.
//!
//! For a report with deficits `(D_AB, D_AC, D_A:BC)` the n-th power gap is
//! `delta_n = D_A:BC^n - D_AB^n - D_AC^n`; the state is monogamous in the n-th
//! power when `delta_n >= 0`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::base::LogBase;
use crate::deficit::{deficit_report, DeficitReport};
use crate::error::{Error, Result};
use crate::states::StateSpec;

pub const DEFAULT_N_MAX: u32 = 64;
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerScanRow {
    pub n: u32,
    /// `D_AB^n`
    pub q_pair_n: f64,
    /// `D_AC^n`
    pub q_ac_n: f64,
    /// `D_A:BC^n`
    pub q_bipart_n: f64,
    pub delta_n: f64,
}

impl PowerScanRow {
    pub fn new(report: &DeficitReport, n: u32) -> Self {
        let p = |x: f64| x.powi(n as i32);
        let (q_pair_n, q_ac_n, q_bipart_n) = (p(report.d_ab), p(report.d_ac), p(report.d_a_bc));
        Self {
            n,
            q_pair_n,
            q_ac_n,
            q_bipart_n,
            delta_n: q_bipart_n - q_pair_n - q_ac_n,
        }
    }
}

/// Rows for `n = 1..=n_max`; empty when `n_max == 0`.
pub fn power_scan(report: &DeficitReport, n_max: u32) -> Vec<PowerScanRow> {
    (1..=n_max).map(|n| PowerScanRow::new(report, n)).collect()
}

/// Smallest monogamous power `r` and the residual `tau_q = delta_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualTangle {
    pub r: Option<u32>,
    pub tau_q: Option<f64>,
}

impl ResidualTangle {
    pub fn none() -> Self {
        Self { r: None, tau_q: None }
    }
}

/// First `n <= n_max` with `delta_n >= -tol`, where the test runs on the
/// deficits divided by the largest of them. Normalizing keeps `tol` a relative
/// noise floor: with an absolute floor, nearly equal deficits below one would
/// pass spuriously once their powers shrink under `tol`. A `tau_q` that is
/// negative only within tolerance is reported as zero.
pub fn min_monogamy_power(report: &DeficitReport, n_max: u32, tol: f64) -> ResidualTangle {
    let scale = report.d_ab.max(report.d_ac).max(report.d_a_bc);
    let monogamous = |n: u32| {
        if scale <= 0.0 {
            return true;
        }
        let p = |x: f64| (x / scale).powi(n as i32);
        p(report.d_a_bc) - p(report.d_ab) - p(report.d_ac) >= -tol
    };
    (1..=n_max)
        .find(|&n| monogamous(n))
        .map(|n| ResidualTangle {
            r: Some(n),
            tau_q: Some(PowerScanRow::new(report, n).delta_n.max(0.0)),
        })
        .unwrap_or_else(ResidualTangle::none)
}

/// `start, start + step, ...` up to `stop`, with `stop` itself appended when
/// the stepping falls short of it. All points must lie in `(0, π]`.
pub fn theta_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidGrid(format!("step {step} must be positive")));
    }
    if !(start > 0.0 && start <= PI) || !(stop > 0.0 && stop <= PI) {
        return Err(Error::InvalidGrid(format!(
            "grid [{start}, {stop}] must lie in (0, π]"
        )));
    }
    if start > stop {
        return Err(Error::InvalidGrid(format!("start {start} exceeds stop {stop}")));
    }
    let slack = step * 1e-9;
    let mut grid: Vec<f64> = (0..)
        .map(|k| start + k as f64 * step)
        .take_while(|t| *t <= stop + slack)
        .map(|t| t.min(stop))
        .collect();
    if let Some(&last) = grid.last() {
        if stop - last > slack {
            grid.push(stop);
        }
    }
    Ok(grid)
}

/// One grid point of a θ sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub theta: f64,
    pub report: DeficitReport,
    /// One row per requested power, in the order of the power list.
    pub rows: Vec<PowerScanRow>,
}

impl SweepPoint {
    pub fn min_power(&self, n_max: u32, tol: f64) -> ResidualTangle {
        min_monogamy_power(&self.report, n_max, tol)
    }
}

/// Evaluates `delta_n(θ)` for every θ in `grid` and every `n` in `powers`.
/// Grid points are evaluated in parallel; results keep grid order.
pub fn theta_sweep(grid: &[f64], powers: &[u32], base: LogBase) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty θ grid".into()));
    }
    if let Some(bad) = grid.iter().find(|t| !(**t > 0.0 && **t <= PI)) {
        return Err(Error::InvalidGrid(format!("θ = {bad} outside (0, π]")));
    }
    if powers.contains(&0) {
        return Err(Error::InvalidGrid("powers must be positive".into()));
    }
    grid.par_iter()
        .map(|&theta| {
            let report = deficit_report(&StateSpec::Theta(theta), base)?;
            let rows = powers.iter().map(|&n| PowerScanRow::new(&report, n)).collect();
            Ok(SweepPoint {
                theta,
                report,
                rows,
            })
        })
        .collect()
}
