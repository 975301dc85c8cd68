use gpp_branch::{solve_minimizer, Functional};
use gpp_radial::GppParams;
use gpp_solvers::{choquard_seed, solve_choquard_mp, solve_mp_type2, solve_tf, SolveResult, TfDiagnostics};
use serde::Serialize;

use crate::config::{RunConfig, Target};
use crate::error::Result;
use crate::output::Outputs;

/// Box of the unit-mass Choquard mountain pass seeding `mountain-pass` solves.
pub(crate) const PROFILE_BOX: f64 = 30.0;
/// Box of Thomas–Fermi solves when none is configured.
pub(crate) const TF_BOX: f64 = 6.0;

/// Computes the configured state. Thomas–Fermi diagnostics come along for that target.
pub fn solve_target(cfg: &RunConfig) -> Result<(SolveResult, Option<TfDiagnostics>)> {
    let policy = cfg.grid.policy();
    let solver = &cfg.solver;
    let params = || GppParams::new(cfg.alpha, cfg.rho.unwrap_or(1.0));
    Ok(match cfg.target {
        Target::Minimizer => (solve_minimizer(Functional::Full, params()?, solver, &policy, None)?, None),
        Target::Choquard => (solve_minimizer(Functional::Choquard, params()?, solver, &policy, None)?, None),
        Target::MountainPass => {
            let kernel = policy.kernel(cfg.alpha, cfg.grid.fixed_or(PROFILE_BOX))?;
            let v0 = solve_choquard_mp(cfg.alpha, &kernel, solver, None)?;
            let (seed, k) = choquard_seed(params()?, &v0.result.state, &v0.kernel)?;
            (solve_mp_type2(params()?, &k, solver, Some(&seed))?, None)
        }
        Target::ThomasFermi => {
            let kernel = policy.kernel(cfg.alpha, cfg.grid.fixed_or(TF_BOX))?;
            let tf = solve_tf(cfg.alpha, &kernel, solver)?;
            (tf.result, Some(tf.diagnostics))
        }
    })
}

#[derive(Serialize)]
struct SolveOutput {
    summary: gpp_solvers::SolveSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    thomas_fermi: Option<TfDiagnostics>,
    profile: String,
}

pub(super) fn run(cfg: &RunConfig, out: &Outputs) -> Result<()> {
    let (result, thomas_fermi) = solve_target(cfg)?;
    let profile = "profile.dat";
    out.profile(profile, &result.state, result.alpha, result.rho())?;
    out.json("solve.json", &SolveOutput { summary: result.summary(), thomas_fermi, profile: profile.into() })?;
    log::info!("energy {:.10e}, lambda {:.10e}, converged {}", result.energy(), result.lambda, result.converged);
    Ok(())
}
