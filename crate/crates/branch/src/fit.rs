use gpp_solvers::SolveKind;
use serde::{Deserialize, Serialize};

use crate::curve::{BranchCurve, BranchRow};
use crate::error::{BranchError, Result};

/// Column of a branch curve entering a power-law fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Column {
    /// Minimum energy `m_ρ`.
    Energy,
    /// Lagrange multiplier `λ_ρ`.
    Lambda,
    /// Mountain-pass level `M_ρ`.
    MountainPass,
}

impl Column {
    fn value(&self, row: &BranchRow) -> Option<f64> {
        let mp = row.kind == SolveKind::MpType2;
        match self {
            Column::Energy if !mp => Some(row.m),
            Column::Lambda => Some(row.lambda),
            Column::MountainPass if mp => Some(row.m),
            _ => None,
        }
    }
}

/// `|value| ≈ prefactor · ρ^exponent`; the prefactor carries the sign of the data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub points: usize,
}

pub const MIN_FIT_POINTS: usize = 4;

/// Least-squares line through `(log ρ, log|value|)` over converged rows with `lo ≤ ρ ≤ hi`.
pub fn fit_power_law(curve: &BranchCurve, column: Column, window: (f64, f64)) -> Result<AsymptoticFit> {
    let data = window_data(curve, column, window)?;
    log_log_fit(&data, |rho| rho)
}

/// Onset law `|value| ≈ prefactor · (ρ − threshold)^exponent` over converged
/// rows with `ρ > threshold` inside the window. `window` in the result is
/// still in units of `ρ`.
pub fn fit_onset(curve: &BranchCurve, column: Column, threshold: f64, window: (f64, f64)) -> Result<AsymptoticFit> {
    if !threshold.is_finite() {
        return Err(BranchError::InvalidArgument(format!("bad threshold {threshold}")));
    }
    let data: Vec<(f64, f64)> =
        window_data(curve, column, window)?.into_iter().filter(|(rho, _)| *rho > threshold).collect();
    log_log_fit(&data, |rho| rho - threshold)
}

fn window_data(curve: &BranchCurve, column: Column, (lo, hi): (f64, f64)) -> Result<Vec<(f64, f64)>> {
    if !(lo > 0.0 && hi >= lo) {
        return Err(BranchError::InvalidArgument(format!("bad fit window ({lo}, {hi})")));
    }
    Ok(curve
        .converged_rows()
        .filter(|r| r.rho >= lo && r.rho <= hi)
        .filter_map(|r| column.value(r).map(|v| (r.rho, v)))
        .filter(|(_, v)| v.is_finite())
        .collect())
}

fn log_log_fit(data: &[(f64, f64)], abscissa: impl Fn(f64) -> f64) -> Result<AsymptoticFit> {
    if data.len() < MIN_FIT_POINTS {
        return Err(BranchError::InsufficientData { needed: MIN_FIT_POINTS, found: data.len() });
    }
    let sign = data[0].1.signum();
    if data.iter().any(|(_, v)| *v == 0.0 || v.signum() != sign) {
        return Err(BranchError::SignChangeInWindow);
    }
    let xs: Vec<f64> = data.iter().map(|(r, _)| abscissa(*r).ln()).collect();
    let ys: Vec<f64> = data.iter().map(|(_, v)| v.abs().ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(BranchError::InsufficientData { needed: 2, found: 1 });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Ok(AsymptoticFit {
        exponent: slope,
        prefactor: sign * intercept.exp(),
        r_squared,
        window: (data[0].0, data[data.len() - 1].0),
        points: data.len(),
    })
}

/// Which end of the curve an automatic window sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveEnd {
    Small,
    Large,
}

/// The first or last decade of converged masses, or the whole range if it
/// spans less than a decade.
pub fn auto_window(curve: &BranchCurve, end: CurveEnd) -> Option<(f64, f64)> {
    let rhos: Vec<f64> = curve.converged_rows().map(|r| r.rho).collect();
    let (first, last) = (*rhos.first()?, *rhos.last()?);
    Some(match end {
        CurveEnd::Small => (first, last.min(10.0 * first)),
        CurveEnd::Large => (first.max(last / 10.0), last),
    })
}
