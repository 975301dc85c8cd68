use gpp_branch::{sweep, Family, SweepOptions};
use gpp_energy::threshold_constants;
use gpp_radial::build_grid;
use gpp_riesz::build_kernel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::solve::{solve_target, PROFILE_BOX};
use crate::config::{RunConfig, Target};
use crate::error::Result;
use crate::output::Outputs;
use gpp_validation::{
    dilation_checks, fiber_algebra_checks, identity_checks, inequality_checks, shape_checks, symmetry_check, Check,
    VerifyReport,
};

/// Mass at which `verify` solves when none is configured: inside the
/// existence range of each regime.
fn default_rho(alpha: f64) -> Result<f64> {
    Ok(if alpha > 1.0 {
        1.0
    } else if alpha == 1.0 {
        9.0
    } else {
        2.0 * threshold_constants(alpha)?.bar_k_alpha
    })
}

/// The identity and property suite for the configured order.
pub fn verify_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let state_cfg = RunConfig { rho: Some(cfg.rho.map_or_else(|| default_rho(cfg.alpha), Ok)?), ..cfg.clone() };
    if cfg.target != Target::ThomasFermi {
        let (state, _) = solve_target(&state_cfg)?;
        let label = format!("{:?} alpha={} rho={}", cfg.target, cfg.alpha, state.rho()).to_lowercase();
        checks.extend(identity_checks(&label, &state, 1e-6, 1e-5));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let fine = build_kernel(cfg.alpha, build_grid(2048, 24.0)?)?;
    checks.extend(dilation_checks(&fine, &mut rng, 10, 1e-5)?);
    let kernel = build_kernel(cfg.alpha, build_grid(256, 12.0)?)?;
    checks.extend(inequality_checks(&kernel, &mut rng, 200)?);
    checks.push(symmetry_check(&kernel, &mut rng, 50, 1e-12)?);
    checks.extend(fiber_algebra_checks(cfg.alpha, &mut rng, 100));
    if let (Some(rhos), true) = (&cfg.rho_list, cfg.alpha >= 1.0) {
        let opts = SweepOptions {
            domain: cfg.grid.policy(),
            spot_checks: 0,
            profile_box: PROFILE_BOX,
            provenance: String::new(),
        };
        let branch = sweep(cfg.alpha, rhos, &cfg.solver, Family::Minimizer, &opts)?;
        checks.extend(shape_checks(&format!("branch alpha={}", cfg.alpha), &branch.curve));
    }
    Ok(checks)
}

pub(super) fn run(cfg: &RunConfig, out: &Outputs) -> Result<VerifyReport> {
    let report = VerifyReport::new(verify_checks(cfg)?);
    for c in &report.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        log::info!("{tag} {} = {:.3e} (tolerance {:.1e})", c.name, c.value, c.tolerance);
    }
    out.json("verify.json", &report)?;
    Ok(report)
}
