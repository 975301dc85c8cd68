use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};

/// Knobs shared by all iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Initial pseudo-time step of the gradient flows (adapted on the fly).
    pub dt: f64,
    /// Iteration budget of the flow stage.
    pub max_iters: usize,
    /// Relative Euler–Lagrange residual required for `converged`.
    pub residual_tol: f64,
    /// Relaxation of the Thomas–Fermi fixed point.
    pub damping: f64,
    /// Admissible-cone constant as a fraction of its supremum.
    pub h_fraction: f64,
    /// Width of the Gaussian used when no initial state is given.
    pub seed_width: f64,
    /// Residual at which the flow hands over to Newton's method.
    pub handover_tol: f64,
    /// Newton iteration budget.
    pub newton_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dt: 1.0,
            max_iters: 4000,
            residual_tol: 1e-6,
            damping: 0.5,
            h_fraction: 0.9,
            seed_width: 1.0,
            handover_tol: 2e-3,
            newton_iters: 40,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(SolverError::InvalidArgument(what.to_string()));
        if !(self.dt > 0.0) {
            return bad("dt must be positive");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if !(self.residual_tol > 0.0) {
            return bad("residual_tol must be positive");
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return bad("damping must lie in (0,1]");
        }
        if !(self.h_fraction > 0.0 && self.h_fraction < 1.0) {
            return bad("h_fraction must lie in (0,1)");
        }
        if !(self.seed_width > 0.0) {
            return bad("seed_width must be positive");
        }
        if !(self.handover_tol > 0.0) {
            return bad("handover_tol must be positive");
        }
        Ok(())
    }
}
