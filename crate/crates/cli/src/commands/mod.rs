mod limits;
mod solve;
mod sweep;
mod thresholds;
mod verify;

pub use limits::{limit_table, LimitRow};
pub use solve::solve_target;
pub use sweep::{curve_fits, onset_fit, FitEntry, OnsetEntry};
pub use verify::verify_checks;

use crate::config::{Command, LoadedConfig};
use crate::error::{LabError, Result};
use crate::output::Outputs;

/// Runs the configured command, writing its files under `output_dir`.
pub fn run(loaded: &LoadedConfig) -> Result<()> {
    let cfg = &loaded.config;
    let out = Outputs::create(&cfg.output_dir, &loaded.hash)?;
    log::info!("{:?} for alpha = {} into {}", cfg.command, cfg.alpha, cfg.output_dir.display());
    match cfg.command {
        Command::Solve => solve::run(cfg, &out),
        Command::Sweep => sweep::run(cfg, &out),
        Command::Limits => limits::run(cfg, &out),
        Command::Thresholds => thresholds::run(cfg, &out),
        Command::Verify => {
            let report = verify::run(cfg, &out)?;
            if report.passed {
                Ok(())
            } else {
                Err(LabError::VerifyFailed { failed: report.failed, total: report.checks.len() })
            }
        }
    }
}
