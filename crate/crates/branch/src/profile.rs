use gpp_radial::{resample, GppParams, RadialField, RescaleKind, ScaleMap};
use gpp_solvers::{SolveKind, SolveResult};
use serde::{Deserialize, Serialize};

use crate::error::{BranchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    L2,
    L4,
    H1,
}

/// Distance between the rescaled `result` and `reference`, measured on the grid of `reference`.
///
/// The rescaling relabels the grid exactly; only the final comparison
/// interpolates. Fails when the rescaled state does not cover the bulk of the
/// reference.
pub fn limit_profile_error(
    result: &SolveResult,
    reference: &SolveResult,
    kind: RescaleKind,
    metric: Metric,
) -> Result<f64> {
    let params = GppParams::new(result.alpha, result.rho())?;
    let scaled = ScaleMap::for_kind(params, kind)?.apply(&result.state)?;
    let target = reference.state.grid();
    let reach = reference.state.mass_radius(0.999);
    if scaled.grid().r_max() < reach {
        return Err(BranchError::GridMismatch(format!(
            "rescaled box {:.4e} ends inside the reference bulk {reach:.4e}",
            scaled.grid().r_max()
        )));
    }
    let on_ref = resample(&scaled, target);
    let diff: Vec<f64> = on_ref.values().iter().zip(reference.state.values()).map(|(a, b)| a - b).collect();
    let diff = RadialField::new(target.clone(), diff)?;
    Ok(match metric {
        Metric::L2 => diff.l2_norm(),
        Metric::L4 => diff.l4_norm4().powf(0.25),
        Metric::H1 => (diff.mass() + diff.dirichlet_energy()).sqrt(),
    })
}

/// Smallest node radius enclosing the fraction `theta` of the mass.
pub fn mass_radius(result: &SolveResult, theta: f64) -> f64 {
    result.state.mass_radius(theta)
}

/// Far-field decay rate of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayDiagnostic {
    /// Fitted slope of `−log(r·u)` against `r`.
    pub slope: f64,
    /// `√λ`.
    pub expected: f64,
    /// Slope within [`DECAY_SLACK`] of `√λ`.
    pub window_ok: bool,
    pub window: (f64, f64),
}

pub const DECAY_SLACK: f64 = 0.25;
const MIN_TAIL_POINTS: usize = 8;

/// Fits the exponential decay rate between the edge of the bulk of the mass
/// and three quarters of the box, discarding values at round-off level.
pub fn decay_diagnostic(result: &SolveResult) -> Result<DecayDiagnostic> {
    if result.kind == SolveKind::ThomasFermi {
        return Err(BranchError::TailUnderresolved("compactly supported profile has no tail".into()));
    }
    if !(result.lambda > 0.0) {
        return Err(BranchError::TailUnderresolved(format!("multiplier {} is not positive", result.lambda)));
    }
    let u = &result.state;
    let grid = u.grid();
    let floor = 1e-12 * u.max_abs();
    let lo = u.mass_radius(0.999);
    let hi = 0.75 * grid.r_max();
    let (xs, ys): (Vec<f64>, Vec<f64>) = grid
        .nodes()
        .iter()
        .zip(u.values())
        .filter(|(r, v)| **r >= lo && **r <= hi && **v > floor)
        .map(|(r, v)| (*r, -(r * v).ln()))
        .unzip();
    if xs.len() < MIN_TAIL_POINTS {
        return Err(BranchError::TailUnderresolved(format!("{} usable far-field points", xs.len())));
    }
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let expected = result.lambda.sqrt();
    Ok(DecayDiagnostic {
        slope,
        expected,
        window_ok: (slope - expected).abs() <= DECAY_SLACK * expected,
        window: (xs[0], xs[xs.len() - 1]),
    })
}
