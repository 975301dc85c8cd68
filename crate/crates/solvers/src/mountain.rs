//! Mountain-pass states of type II: minimisers of the energy over the fiber
//! maxima inside the admissible cone, `0 < α < 1`.

use gpp_energy::{fiber_from_parts, threshold_constants};
use gpp_radial::{dilate_lossy, GppParams, RadialField, RescaleKind, ScaleMap};
use gpp_riesz::RieszKernel;

use crate::common::{assemble, check_order, initial_values, Outcome};
use crate::config::SolverConfig;
use crate::error::{Result, SolverError};
use crate::flow::normalize;
use crate::newton::newton_constrained;
use crate::problem::{Eval, Problem};
use crate::result::{SolveKind, SolveResult, Termination};

/// Cone membership `|∇u|₂^{3−α} < H ρ^{−(1−α)} 𝒟(u)`, returned as the ratio
/// of the left side to the right side (inside the cone when `< 1`).
pub fn cone_ratio(a: f64, c: f64, rho: f64, alpha: f64, h: f64) -> f64 {
    a.powf(0.5 * (3.0 - alpha)) / (h * rho.powf(-(1.0 - alpha)) * c)
}

/// Seed for a state of mass `ρ` obtained from a unit-mass Choquard profile by
/// the exact large/small-mass rescaling, with the kernel moved to its grid.
pub fn choquard_seed(
    params: GppParams,
    profile: &RadialField,
    kernel: &RieszKernel,
) -> Result<(RadialField, RieszKernel)> {
    let kind = if params.alpha() < 1.0 { RescaleKind::ChoquardLargeMass } else { RescaleKind::ChoquardSmallMass };
    let seed = ScaleMap::for_kind(params, kind)?.inverse().apply(profile)?;
    let k = kernel.on_grid(seed.grid().clone());
    Ok((seed, k))
}

struct Fiber {
    u: Vec<f64>,
    eval: Eval,
    cone: f64,
}

/// Moves `u` to the maximum of its fiber on the same grid.
fn to_fiber_max(p: &Problem, field: &RadialField, rho: f64, alpha: f64, h: f64) -> Result<Fiber> {
    let e = p.eval(field.values());
    let profile = fiber_from_parts(e.a, e.b, e.c, alpha)?;
    let t = profile.t_max.ok_or_else(|| SolverError::LeftAdmissibleCone("fiber has no local maximum".into()))?;
    let mut u = dilate_lossy(field, t).into_values();
    normalize(p, &mut u, rho);
    let eval = p.eval(&u);
    let cone = cone_ratio(eval.a, eval.c, rho, alpha, h);
    Ok(Fiber { u, eval, cone })
}

/// Alternates a preconditioned tangent descent step with re-projection onto
/// the fiber maximum, then polishes the critical point with Newton's method.
pub fn solve_mp_type2(
    params: GppParams,
    kernel: &RieszKernel,
    cfg: &SolverConfig,
    init: Option<&RadialField>,
) -> Result<SolveResult> {
    cfg.validate()?;
    let (alpha, rho) = (params.alpha(), params.rho());
    check_order(kernel, alpha)?;
    let h = cfg.h_fraction * threshold_constants(alpha)?.h_bound;
    let grid = kernel.grid().clone();
    let problem = Problem::new(kernel, 1.0);
    let mut u0 = initial_values(&grid, cfg.seed_width, init);
    normalize(&problem, &mut u0, rho);
    let field = |v: Vec<f64>| RadialField::new(grid.clone(), v);
    let mut cur = to_fiber_max(&problem, &field(u0)?, rho, alpha, h)?;
    if cur.cone >= 1.0 {
        return Err(SolverError::LeftAdmissibleCone(format!("seed cone ratio {:.3e}", cur.cone)));
    }
    let mut energy = cur.eval.energy(1.0);
    let mut trace = vec![energy];
    let mut tau = cfg.dt;
    let mut iterations = 0;
    let residual = |u: &[f64], e: &Eval| crate::flow::relative_residual(&problem, u, e).1;
    let mut rel = residual(&cur.u, &cur.eval);
    while iterations < cfg.max_iters && rel > cfg.handover_tol && tau > 1e-12 {
        iterations += 1;
        let c = cur.u.iter().zip(&cur.eval.phi).map(|(v, f)| f - v * v).fold(0.0f64, f64::max);
        loop {
            let d: Vec<f64> = cur.u.iter().zip(&cur.eval.phi).map(|(v, f)| 1.0 / tau + v * v - f + c).collect();
            let candidate = problem.factor_shifted(1.0, &d).map(|lu| {
                let mut x: Vec<f64> = cur.u.iter().zip(&problem.w).map(|(a, w)| a * w).collect();
                lu.solve_in_place(&mut x);
                normalize(&problem, &mut x, rho);
                x
            });
            if let Some(x) = candidate {
                if let Ok(next) = to_fiber_max(&problem, &field(x)?, rho, alpha, h) {
                    let e = next.eval.energy(1.0);
                    if next.cone < 1.0 && e <= energy + 1e-14 * energy.abs() {
                        energy = e;
                        trace.push(e);
                        cur = next;
                        tau = (tau * 2.0).min(1e8);
                        break;
                    }
                }
            }
            tau *= 0.25;
            if tau <= 1e-12 {
                break;
            }
        }
        rel = residual(&cur.u, &cur.eval);
    }
    let lambda0 = cur.eval.nehari_lambda(1.0);
    let newton = newton_constrained(&problem, cur.u, lambda0, rho, cfg.newton_iters);
    let result = assemble(
        kernel,
        cfg.residual_tol,
        Outcome {
            values: newton.u,
            lambda: newton.lambda,
            kind: SolveKind::MpType2,
            iterations: iterations + newton.iterations,
            termination: if newton.stalled { Termination::Stalled } else { Termination::Converged },
            energy_trace: trace,
        },
    )?;
    let r = &result.report;
    let ratio = cone_ratio(r.a, r.c, rho, alpha, h);
    if ratio >= 1.0 {
        return Err(SolverError::LeftAdmissibleCone(format!("final cone ratio {ratio:.3e}")));
    }
    Ok(result)
}
