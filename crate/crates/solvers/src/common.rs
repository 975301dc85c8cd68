use std::sync::Arc;

use gpp_energy::identity_residuals_with;
use gpp_radial::{resample, RadialField, RadialGrid};
use gpp_riesz::RieszKernel;

use crate::error::{Result, SolverError};
use crate::result::{SolveKind, SolveResult, Termination};

/// Mass fraction beyond which a flow iterate is considered spread to the box.
pub const COLLAPSE_FRACTION: f64 = 1e-2;

pub(crate) fn check_order(kernel: &RieszKernel, alpha: f64) -> Result<()> {
    if (kernel.alpha() - alpha).abs() > 1e-14 * alpha.abs().max(1.0) {
        return Err(SolverError::OrderMismatch { kernel: kernel.alpha(), requested: alpha });
    }
    Ok(())
}

/// Gaussian seed, or the given state carried over to the kernel's grid.
pub(crate) fn initial_values(grid: &Arc<RadialGrid>, width: f64, init: Option<&RadialField>) -> Vec<f64> {
    match init {
        Some(f) if Arc::ptr_eq(f.grid(), grid) || f.grid().same_as(grid) => f.values().to_vec(),
        Some(f) => resample(f, grid).into_values(),
        None => grid.nodes().iter().map(|r| (-0.5 * (r / width).powi(2)).exp()).collect(),
    }
}

/// Share of the mass of `u` carried by `r > fraction·r_max`.
pub fn edge_mass_fraction(u: &RadialField, fraction: f64) -> f64 {
    let grid = u.grid();
    let cut = fraction * grid.r_max();
    let (mut outer, mut total) = (0.0, 0.0);
    for ((r, w), v) in grid.nodes().iter().zip(grid.weights()).zip(u.values()) {
        let m = w * v * v;
        total += m;
        if *r > cut {
            outer += m;
        }
    }
    if total > 0.0 {
        outer / total
    } else {
        0.0
    }
}

pub(crate) struct Outcome {
    pub values: Vec<f64>,
    pub lambda: f64,
    pub kind: SolveKind,
    pub iterations: usize,
    pub termination: Termination,
    pub energy_trace: Vec<f64>,
}

/// Wrap a raw state with its energy report and residual diagnostics.
pub(crate) fn assemble(kernel: &RieszKernel, tol: f64, out: Outcome) -> Result<SolveResult> {
    let quartic = out.kind.quartic();
    let state = RadialField::new(kernel.grid().clone(), out.values)?;
    let report = gpp_energy::evaluate(&state, kernel)?;
    let residuals = identity_residuals_with(&state, out.lambda, quartic, kernel, &report)?;
    let converged =
        out.termination == Termination::Converged && residuals.euler_lagrange_sup <= tol && out.lambda.is_finite();
    let termination = match (converged, out.termination) {
        (false, Termination::Converged) => Termination::MaxIterations,
        (_, t) => t,
    };
    Ok(SolveResult {
        state,
        alpha: kernel.alpha(),
        lambda: out.lambda,
        report,
        residuals,
        kind: out.kind,
        iterations: out.iterations,
        converged,
        termination,
        energy_trace: out.energy_trace,
    })
}
