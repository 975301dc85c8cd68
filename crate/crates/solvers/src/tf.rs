//! Thomas–Fermi free-boundary problem `z² − I_α∗z² = 4m` on `{z > 0}`.
//!
//! Works on the density `φ = z²` with the damped map
//! `φ ↦ (1−ω)φ + ω(Mφ + 4m)₊`, where `m` is fixed at every step by bisection
//! so that `∫φ = 1`.

use gpp_energy::IdentityResiduals;
use gpp_radial::RadialField;
use gpp_riesz::RieszKernel;
use serde::{Deserialize, Serialize};

use crate::common::initial_values;
use crate::config::SolverConfig;
use crate::error::{Result, SolverError};
use crate::result::{SolveKind, SolveResult, Termination};

/// Fixed-point residual at which the iteration stops.
const TF_FLOOR: f64 = 1e-12;

/// Thomas–Fermi state with its free-boundary data.
#[derive(Debug, Clone)]
pub struct TfSolution {
    /// `z = √φ`; `lambda` holds `−4m`. The Nehari and Pohozaev slots of the
    /// residuals hold the relative defects of `|z|₄⁴ = −4(3−α)m/α` and
    /// `𝒟(z) = −12m/α`, the EL slot the fixed-point residual.
    pub result: SolveResult,
    pub diagnostics: TfDiagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TfDiagnostics {
    /// Multiplier `m = E_TF(z)` at unit mass.
    pub m: f64,
    /// Largest node with `φ > 0`.
    pub support_radius: f64,
    /// `max|T(φ) − φ| / max φ` at exit.
    pub fixed_point_residual: f64,
    /// `max|z² − I_α∗z² − 4m|` over the interior of the support, relative to `max z²`.
    pub free_boundary_residual: f64,
}

/// Total mass of `(Mφ + 4m)₊`.
fn clipped_mass(weights: &[f64], pot: &[f64], m: f64) -> f64 {
    weights.iter().zip(pot).map(|(w, p)| w * (p + 4.0 * m).max(0.0)).sum()
}

/// The `m` at which `(Mφ + 4m)₊` has unit mass.
fn unit_mass_multiplier(weights: &[f64], pot: &[f64]) -> Result<f64> {
    let top = pot.iter().fold(0.0f64, |a, &b| a.max(b));
    let (mut lo, mut hi) = (-top / 4.0, 0.0);
    if !(clipped_mass(weights, pot, hi) >= 1.0) {
        return Err(SolverError::BisectionFailure);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if clipped_mass(weights, pot, mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // The mass is affine in `m` for a fixed active set: finish with one secant step.
    let (glo, ghi) = (clipped_mass(weights, pot, lo), clipped_mass(weights, pot, hi));
    if ghi > glo {
        Ok(lo + (1.0 - glo) * (hi - lo) / (ghi - glo))
    } else {
        Ok(hi)
    }
}

pub fn solve_tf(alpha: f64, kernel: &RieszKernel, cfg: &SolverConfig) -> Result<TfSolution> {
    cfg.validate()?;
    crate::common::check_order(kernel, alpha)?;
    let grid = kernel.grid().clone();
    let w = grid.weights();
    let n = grid.n();
    let mut phi: Vec<f64> = initial_values(&grid, cfg.seed_width, None).iter().map(|z| z * z).collect();
    let mass: f64 = w.iter().zip(&phi).map(|(a, b)| a * b).sum();
    phi.iter_mut().for_each(|v| *v /= mass);
    let omega = cfg.damping;
    let mut pot = vec![0.0; n];
    let mut m;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        kernel.apply_slice(&phi, &mut pot);
        m = unit_mass_multiplier(w, &pot)?;
        let top = phi.iter().fold(0.0f64, |a, &b| a.max(b));
        let mut diff = 0.0f64;
        for i in 0..n {
            let t = (pot[i] + 4.0 * m).max(0.0);
            diff = diff.max((t - phi[i]).abs());
            phi[i] = (1.0 - omega) * phi[i] + omega * t;
        }
        iterations += 1;
        residual = diff / top;
        if residual <= TF_FLOOR {
            break;
        }
    }
    // Damping leaves geometrically small mass outside the support; one
    // undamped application of the map removes it.
    kernel.apply_slice(&phi, &mut pot);
    m = unit_mass_multiplier(w, &pot)?;
    phi.iter_mut().zip(&pot).for_each(|(f, p)| *f = (p + 4.0 * m).max(0.0));
    kernel.apply_slice(&phi, &mut pot);
    let z: Vec<f64> = phi.iter().map(|v| v.max(0.0).sqrt()).collect();
    let state = RadialField::new(grid.clone(), z)?;
    let report = gpp_energy::evaluate(&state, kernel)?;
    let support_radius = grid.nodes().iter().zip(&phi).filter(|(_, &p)| p > 0.0).map(|(r, _)| *r).fold(0.0, f64::max);
    let top = phi.iter().fold(0.0f64, |a, &b| a.max(b));
    // Interior: drop the two cells next to the free boundary.
    let interior = support_radius - 2.0 * grid.h();
    let free_boundary_residual = grid
        .nodes()
        .iter()
        .enumerate()
        .filter(|(_, r)| **r < interior)
        .map(|(i, _)| (phi[i] - pot[i] - 4.0 * m).abs())
        .fold(0.0, f64::max)
        / top;
    let b_target = -4.0 * (3.0 - alpha) / alpha * m;
    let d_target = -12.0 / alpha * m;
    let residuals = IdentityResiduals {
        nehari: (report.b - b_target) / b_target,
        pohozaev: (report.c - d_target) / d_target,
        euler_lagrange_sup: residual,
    };
    let converged = residual <= cfg.residual_tol;
    let result = SolveResult {
        state,
        alpha,
        lambda: -4.0 * m,
        report,
        residuals,
        kind: SolveKind::ThomasFermi,
        iterations,
        converged,
        termination: if converged { Termination::Converged } else { Termination::MaxIterations },
        energy_trace: Vec::new(),
    };
    Ok(TfSolution {
        result,
        diagnostics: TfDiagnostics { m, support_radius, fixed_point_residual: residual, free_boundary_residual },
    })
}
