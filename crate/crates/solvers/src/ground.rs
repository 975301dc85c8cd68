use gpp_radial::{GppParams, RadialField};
use gpp_riesz::RieszKernel;

use crate::common::{assemble, check_order, edge_mass_fraction, initial_values, Outcome, COLLAPSE_FRACTION};
use crate::config::SolverConfig;
use crate::error::Result;
use crate::flow::normalized_flow;
use crate::newton::newton_constrained;
use crate::problem::Problem;
use crate::result::{SolveKind, SolveResult, Termination};

/// Constrained minimiser of the full functional on the sphere of mass `ρ²`.
///
/// The normalised gradient flow brings the iterate close to a minimiser and
/// Newton's method finishes the job. When the flow spreads the mass to the
/// edge of the box the result is flagged [`Termination::Collapsed`].
pub fn minimize_normalized(
    params: GppParams,
    kernel: &RieszKernel,
    cfg: &SolverConfig,
    init: Option<&RadialField>,
) -> Result<SolveResult> {
    cfg.validate()?;
    check_order(kernel, params.alpha())?;
    let problem = Problem::new(kernel, 1.0);
    let rho = params.rho();
    let u0 = initial_values(kernel.grid(), cfg.seed_width, init);
    let flow = normalized_flow(&problem, u0, rho, cfg.dt, cfg.max_iters, cfg.handover_tol);
    let spread = edge_mass_fraction(&RadialField::new(kernel.grid().clone(), flow.u.clone())?, 0.5);
    let kind_of = |f: f64| {
        if params.alpha() >= 1.0 || f < 0.0 {
            SolveKind::GlobalMin
        } else {
            SolveKind::LocalMin
        }
    };
    if spread > COLLAPSE_FRACTION {
        let f = flow.eval.energy(1.0);
        return assemble(
            kernel,
            cfg.residual_tol,
            Outcome {
                values: flow.u,
                lambda: flow.lambda,
                kind: kind_of(f),
                iterations: flow.iterations,
                termination: Termination::Collapsed,
                energy_trace: flow.energies,
            },
        );
    }
    let newton = newton_constrained(&problem, flow.u, flow.lambda, rho, cfg.newton_iters);
    let termination = if newton.stalled { Termination::Stalled } else { Termination::Converged };
    let f = problem.eval(&newton.u).energy(1.0);
    assemble(
        kernel,
        cfg.residual_tol,
        Outcome {
            values: newton.u,
            lambda: newton.lambda,
            kind: kind_of(f),
            iterations: flow.iterations + newton.iterations,
            termination,
            energy_trace: flow.energies,
        },
    )
}
