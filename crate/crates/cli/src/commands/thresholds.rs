use gpp_branch::{detect_thresholds, ThresholdOptions};

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::Outputs;

pub(super) fn run(cfg: &RunConfig, out: &Outputs) -> Result<()> {
    let opts = ThresholdOptions { domain: cfg.grid.policy(), ..ThresholdOptions::default() };
    let report = detect_thresholds(cfg.alpha, &cfg.solver, &opts)?;
    log::info!("rho* = {:?}, rho** (empirical) = {:?}", report.rho_star, report.rho_doublestar_empirical);
    out.json("thresholds.json", &report)?;
    Ok(())
}
