//! Box selection around a solve.
//!
//! The stationary states have very different spatial extents across regimes:
//! small-mass states for `α > 1` spread like `ρ^{−2/(α−1)}`, Thomas–Fermi
//! states keep a fixed support and states near the critical mass for `α = 1`
//! decay like `e^{−√λ r}` with a tiny `λ`. The policy picks a first box by
//! regime, enlarges it when the flow spreads to the walls and finally checks
//! the converged box against the measured extent of the state.

use gpp_energy::{evaluate, fiber_profile};
use gpp_radial::{build_grid, GppParams, RadialField};
use gpp_riesz::{build_kernel, RieszKernel};
use gpp_solvers::{minimize_choquard, minimize_normalized, SolveResult, SolverConfig, Termination};
use serde::{Deserialize, Serialize};

use crate::error::{BranchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DomainPolicy {
    /// Grid cells.
    pub n: usize,
    /// Fixed box radius; `None` selects it automatically.
    pub r_max: Option<f64>,
    /// How many times a collapsed solve is retried on a four times larger box.
    pub enlargements: usize,
    /// Box margin beyond the bulk of the mass, in decay lengths `1/√λ`.
    pub tail_lengths: f64,
}

impl Default for DomainPolicy {
    fn default() -> Self {
        Self { n: 2048, r_max: None, enlargements: 2, tail_lengths: 16.0 }
    }
}

/// Accepted ratio between the box and the required radius.
const FIT_BAND: (f64, f64) = (0.9, 3.0);
const REFITS: usize = 2;
/// Box of the unit-width Gaussian used to size the first box.
const TRIAL_BOX: f64 = 12.0;
const TRIAL_MARGIN: f64 = 1.5;

impl DomainPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.n < 16 {
            return Err(BranchError::InvalidArgument(format!("grid needs at least 16 cells, got {}", self.n)));
        }
        if let Some(r) = self.r_max {
            if !(r.is_finite() && r > 0.0) {
                return Err(BranchError::InvalidArgument(format!("box radius must be positive, got {r}")));
            }
        }
        if !(self.tail_lengths.is_finite() && self.tail_lengths > 0.0) {
            return Err(BranchError::InvalidArgument("tail_lengths must be positive".into()));
        }
        Ok(())
    }

    /// First box for a minimiser of mass `ρ²`.
    pub fn initial_radius(&self, alpha: f64, rho: f64) -> f64 {
        self.initial_box(alpha, rho).0
    }

    /// First box and the factor by which the width of a cold-start seed is
    /// stretched to fit it.
    ///
    /// For `α > 1` a Gaussian of mass `ρ²` is dilated to the minimum of its
    /// fiber; the box is sized from the extent and the multiplier of that
    /// trial state. Elsewhere, or if the trial state is not bound, a fixed
    /// radius per regime is used.
    pub fn initial_box(&self, alpha: f64, rho: f64) -> (f64, f64) {
        if let Some(r) = self.r_max {
            return (r, 1.0);
        }
        if alpha > 1.0 {
            if let Some(b) = self.trial_box(alpha, rho) {
                return b;
            }
        }
        (if alpha == 1.0 { 160.0 } else { 100.0 }, 1.0)
    }

    fn trial_box(&self, alpha: f64, rho: f64) -> Option<(f64, f64)> {
        let kernel = self.kernel(alpha, TRIAL_BOX).ok()?;
        let gauss = RadialField::from_fn(kernel.grid().clone(), |r| (-0.5 * r * r).exp()).ok()?;
        let gauss = gauss.project_mass(rho).ok()?;
        let report = evaluate(&gauss, &kernel).ok()?;
        let t = fiber_profile(&report, alpha).ok()?.t_min?;
        let (a, b, c) = (report.a * t * t, report.b * t.powi(3), report.c * t.powf(3.0 - alpha));
        let lambda = (c - a - b) / (rho * rho);
        (lambda > 0.0).then(|| {
            let r = TRIAL_MARGIN * (gauss.mass_radius(0.999) / t + self.tail_lengths / lambda.sqrt());
            (r, (1.0 / t).max(1.0))
        })
    }

    /// Radius holding the bulk of the mass plus the decay margin.
    pub fn required_radius(&self, state: &RadialField, lambda: f64) -> Option<f64> {
        (lambda.is_finite() && lambda > 0.0).then(|| state.mass_radius(0.999) + self.tail_lengths / lambda.sqrt())
    }

    pub fn kernel(&self, alpha: f64, r_max: f64) -> Result<RieszKernel> {
        Ok(build_kernel(alpha, build_grid(self.n, r_max)?)?)
    }
}

/// Which functional is minimised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    Full,
    Choquard,
}

/// Minimiser on an automatically sized box.
///
/// With a warm start the first box is the one the warm start lives on.
pub fn solve_minimizer(
    functional: Functional,
    params: GppParams,
    cfg: &SolverConfig,
    policy: &DomainPolicy,
    init: Option<&RadialField>,
) -> Result<SolveResult> {
    policy.validate()?;
    let alpha = params.alpha();
    let (mut r, stretch) = match (policy.r_max, init) {
        (Some(r), _) => (r, 1.0),
        (None, Some(f)) => (f.grid().r_max(), 1.0),
        (None, None) => policy.initial_box(alpha, params.rho()),
    };
    let cfg = &SolverConfig { seed_width: cfg.seed_width * stretch, ..*cfg };
    let solve_on = |r: f64, seed: Option<&RadialField>| -> Result<SolveResult> {
        let kernel = policy.kernel(alpha, r)?;
        Ok(match functional {
            Functional::Full => minimize_normalized(params, &kernel, cfg, seed)?,
            Functional::Choquard => minimize_choquard(params, &kernel, cfg, seed)?,
        })
    };
    let mut result = solve_on(r, init)?;
    if policy.r_max.is_some() {
        return Ok(result);
    }
    let mut grown = 0;
    while result.termination == Termination::Collapsed && grown < policy.enlargements {
        r *= 4.0;
        grown += 1;
        result = solve_on(r, init)?;
    }
    for _ in 0..REFITS {
        if !result.converged {
            break;
        }
        let Some(need) = policy.required_radius(&result.state, result.lambda) else { break };
        if r >= FIT_BAND.0 * need && r <= FIT_BAND.1 * need {
            break;
        }
        r = 1.5 * need;
        let next = solve_on(r, Some(&result.state))?;
        if !next.converged {
            // the state found on the previous box stands
            break;
        }
        result = next;
    }
    Ok(result)
}
