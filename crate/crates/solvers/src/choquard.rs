//! Limit states of the Choquard functional `½|∇w|₂² − ¼𝒟(w)`.

use std::sync::Arc;

use gpp_radial::{GppParams, RadialField, ScaleMap};
use gpp_riesz::RieszKernel;
use serde::{Deserialize, Serialize};

use crate::common::{assemble, check_order, initial_values, Outcome};
use crate::config::SolverConfig;
use crate::error::{Result, SolverError};
use crate::flow::{normalize, normalized_flow};
use crate::newton::{newton_constrained, newton_fixed};
use crate::problem::Problem;
use crate::result::{SolveKind, SolveResult, Termination};

fn termination(stalled: bool) -> Termination {
    if stalled {
        Termination::Stalled
    } else {
        Termination::Converged
    }
}

/// Unit-mass minimiser `w₀` of the Choquard functional, for `1 < α < 3`.
pub fn solve_choquard_min(
    alpha: f64,
    kernel: &RieszKernel,
    cfg: &SolverConfig,
    init: Option<&RadialField>,
) -> Result<SolveResult> {
    minimize_choquard(GppParams::new(alpha, 1.0)?, kernel, cfg, init)
}

/// Minimiser of the Choquard functional on the sphere of mass `ρ²`.
pub fn minimize_choquard(
    params: GppParams,
    kernel: &RieszKernel,
    cfg: &SolverConfig,
    init: Option<&RadialField>,
) -> Result<SolveResult> {
    let alpha = params.alpha();
    cfg.validate()?;
    check_order(kernel, alpha)?;
    if !(alpha > 1.0 && alpha < 3.0) {
        return Err(SolverError::InvalidArgument(format!("Choquard minimiser needs 1 < α < 3, got {alpha}")));
    }
    let problem = Problem::new(kernel, 0.0);
    let u0 = initial_values(kernel.grid(), cfg.seed_width, init);
    let flow = normalized_flow(&problem, u0, params.rho(), cfg.dt, cfg.max_iters, cfg.handover_tol);
    let newton = newton_constrained(&problem, flow.u, flow.lambda, params.rho(), cfg.newton_iters);
    assemble(
        kernel,
        cfg.residual_tol,
        Outcome {
            values: newton.u,
            lambda: newton.lambda,
            kind: SolveKind::ChoquardMin,
            iterations: flow.iterations + newton.iterations,
            termination: termination(newton.stalled),
            energy_trace: flow.energies,
        },
    )
}

/// Positive solution `w★` of `−Δw + w = (I_α∗w²)w`.
///
/// The amplitude is reset every step so that the Nehari identity of the
/// unconstrained functional holds (Petviashvili's stabilising factor), then
/// Newton's method polishes the state.
pub fn solve_choquard_frequency(
    alpha: f64,
    kernel: &RieszKernel,
    cfg: &SolverConfig,
    init: Option<&RadialField>,
) -> Result<SolveResult> {
    cfg.validate()?;
    check_order(kernel, alpha)?;
    let problem = Problem::new(kernel, 0.0);
    let lu = problem.factor_shifted(1.0, &vec![1.0; problem.n()]).expect("shifted stiffness is positive definite");
    let mut u = initial_values(kernel.grid(), cfg.seed_width, init);
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        iterations += 1;
        let phi = problem.potential(&u);
        let mut ku = problem.neg_lap(&u);
        ku.iter_mut().zip(&u).for_each(|(k, v)| *k += v);
        let lhs = problem.w_dot(&u, &ku);
        let pu: Vec<f64> = phi.iter().zip(&u).map(|(f, v)| f * v).collect();
        let rhs = problem.w_dot(&u, &pu);
        if !(rhs > 0.0) {
            break;
        }
        let factor = (lhs / rhs).powf(1.5);
        let mut next: Vec<f64> = pu.iter().zip(&problem.w).map(|(a, w)| a * w).collect();
        lu.solve_in_place(&mut next);
        next.iter_mut().for_each(|v| *v = factor * v.abs());
        let change = next.iter().zip(&u).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
            / next.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        u = next;
        if change <= cfg.handover_tol * 1e-2 {
            break;
        }
    }
    let newton = newton_fixed(&problem, u, 1.0, cfg.newton_iters);
    assemble(
        kernel,
        cfg.residual_tol,
        Outcome {
            values: newton.u,
            lambda: 1.0,
            kind: SolveKind::ChoquardFrequency,
            iterations: iterations + newton.iterations,
            termination: termination(newton.stalled),
            energy_trace: Vec::new(),
        },
    )
}

/// `Q(u) = |∇u|₂^{3−α}|u|₂^{1+α}/𝒟(u)`, invariant under dilations and scalar multiples.
pub fn gn_quotient_value(a: f64, c: f64, mass: f64, alpha: f64) -> f64 {
    a.powf(0.5 * (3.0 - alpha)) * mass.powf(0.5 * (1.0 + alpha)) / c
}

/// Mountain-pass level at unit mass from the optimal quotient, `α < 1`:
/// `[S²·2^{3+α}(1−α)^{1−α}/(3−α)^{3−α}]^{1/(1−α)}`.
pub fn mp_level_from_quotient(s: f64, alpha: f64) -> f64 {
    let inner = s * s * 2f64.powf(3.0 + alpha) * (1.0 - alpha).powf(1.0 - alpha) / (3.0 - alpha).powf(3.0 - alpha);
    inner.powf(1.0 / (1.0 - alpha))
}

/// Inverse of [`mp_level_from_quotient`].
pub fn quotient_from_mp_level(m: f64, alpha: f64) -> f64 {
    let inner = m.powf(1.0 - alpha);
    (inner * (3.0 - alpha).powf(3.0 - alpha) / (2f64.powf(3.0 + alpha) * (1.0 - alpha).powf(1.0 - alpha))).sqrt()
}

/// Mountain-pass Choquard state `v₀` on the unit sphere, `0 < α < 1`.
#[derive(Debug, Clone)]
pub struct ChoquardMpSolution {
    /// `v₀`, on a grid rescaled from the input one so that `v₀` sits at the
    /// maximum of its fiber.
    pub result: SolveResult,
    /// Kernel on the grid of `v₀`.
    pub kernel: RieszKernel,
    pub levels: ChoquardMpLevels,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChoquardMpLevels {
    /// Quotient value `S_α = Q(v₀)`.
    pub quotient: f64,
    /// `M₁ = E(v₀)`.
    pub level: f64,
    /// `M₁` predicted from `S_α`.
    pub level_from_quotient: f64,
    /// `S_α` recovered from `M₁`.
    pub quotient_from_level: f64,
}

/// Minimises the quotient `Q` by a preconditioned projected descent, moves the
/// minimiser to the top of its fiber on the unit sphere and polishes it with
/// Newton's method.
pub fn solve_choquard_mp(
    alpha: f64,
    kernel: &RieszKernel,
    cfg: &SolverConfig,
    init: Option<&RadialField>,
) -> Result<ChoquardMpSolution> {
    cfg.validate()?;
    check_order(kernel, alpha)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(SolverError::InvalidArgument(format!("Choquard mountain pass needs 0 < α < 1, got {alpha}")));
    }
    let problem = Problem::new(kernel, 0.0);
    let mut u = initial_values(kernel.grid(), cfg.seed_width, init);
    normalize(&problem, &mut u, 1.0);
    let mut e = problem.eval(&u);
    let mut q = gn_quotient_value(e.a, e.c, e.mass, alpha);
    let mut tau = cfg.dt;
    let mut iterations = 0;
    let descent_residual = |u: &[f64], e: &crate::problem::Eval| {
        // W-gradient of log Q scaled by A/(3−α): Lu + μu − νΦu.
        let mu = (1.0 + alpha) * e.a / ((3.0 - alpha) * e.mass);
        let nu = 4.0 * e.a / ((3.0 - alpha) * e.c);
        let lap = problem.neg_lap(u);
        let scale = lap.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let sup = (0..u.len()).fold(0.0f64, |m, i| m.max((lap[i] + mu * u[i] - nu * e.phi[i] * u[i]).abs()));
        (mu, nu, sup / scale)
    };
    let (mut mu, mut nu, mut rel) = descent_residual(&u, &e);
    while iterations < cfg.max_iters && rel > cfg.handover_tol && tau > 1e-12 {
        iterations += 1;
        loop {
            let d: Vec<f64> = vec![1.0 / tau + mu; u.len()];
            let lu = problem.factor_shifted(1.0, &d).expect("positive shift");
            let mut x: Vec<f64> = (0..u.len()).map(|i| problem.w[i] * (u[i] / tau + nu * e.phi[i] * u[i])).collect();
            lu.solve_in_place(&mut x);
            normalize(&problem, &mut x, 1.0);
            let ce = problem.eval(&x);
            let cq = gn_quotient_value(ce.a, ce.c, ce.mass, alpha);
            if cq <= q * (1.0 + 1e-14) {
                u = x;
                e = ce;
                q = cq;
                tau = (tau * 2.0).min(1e8);
                break;
            }
            tau *= 0.25;
            if tau <= 1e-12 {
                break;
            }
        }
        (mu, nu, rel) = descent_residual(&u, &e);
    }
    // Dilate to the top of the fiber: t^{1−α} = 4A/((3−α)C), exactly by relabelling.
    let t = (4.0 * e.a / ((3.0 - alpha) * e.c)).powf(1.0 / (1.0 - alpha));
    let map = ScaleMap { amplitude: t.powf(1.5), length: t };
    let field = map.apply(&RadialField::new(kernel.grid().clone(), u)?)?;
    let grid = Arc::clone(field.grid());
    let kernel_t = kernel.on_grid(grid);
    let problem_t = Problem::new(&kernel_t, 0.0);
    let values = field.into_values();
    let lambda0 = problem_t.eval(&values).nehari_lambda(0.0);
    let newton = newton_constrained(&problem_t, values, lambda0, 1.0, cfg.newton_iters);
    let result = assemble(
        &kernel_t,
        cfg.residual_tol,
        Outcome {
            values: newton.u,
            lambda: newton.lambda,
            kind: SolveKind::ChoquardMp,
            iterations: iterations + newton.iterations,
            termination: termination(newton.stalled),
            energy_trace: Vec::new(),
        },
    )?;
    let r = &result.report;
    let quotient = gn_quotient_value(r.a, r.c, r.rho2, alpha);
    let level = r.e_choquard;
    let levels = ChoquardMpLevels {
        quotient,
        level,
        level_from_quotient: mp_level_from_quotient(quotient, alpha),
        quotient_from_level: quotient_from_mp_level(level, alpha),
    };
    Ok(ChoquardMpSolution { result, kernel: kernel_t, levels })
}
