use gpp_branch::{
    auto_window, check_shape, fit_onset, fit_power_law, sweep_families, AsymptoticFit, BranchCurve, Column, CurveEnd,
    Family, ShapeReport, SpotCheck, SweepOptions,
};
use gpp_solvers::solve_choquard_frequency;
use serde::Serialize;

use super::solve::PROFILE_BOX;
use crate::config::{Format, RunConfig};
use crate::error::{LabError, Result};
use crate::output::Outputs;

#[derive(Debug, Clone, Serialize)]
pub struct FitEntry {
    pub column: Column,
    pub end: CurveEnd,
    pub fit: Option<AsymptoticFit>,
    pub error: Option<String>,
}

/// `|m_ρ| ≈ c(ρ − ρ★)^p` just above the critical mass of `α = 1`; reported
/// without a target exponent.
#[derive(Debug, Clone, Serialize)]
pub struct OnsetEntry {
    pub rho_star: f64,
    pub fit: Option<AsymptoticFit>,
    pub error: Option<String>,
}

#[derive(Serialize)]
struct FitsOutput<'a> {
    family: Family,
    alpha: f64,
    fits: Vec<FitEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    onset: Option<OnsetEntry>,
    shape: ShapeReport,
    spot_checks: &'a [SpotCheck],
}

/// Power-law fits of every applicable column at both ends of the curve.
pub fn curve_fits(curve: &BranchCurve, family: Family) -> Vec<FitEntry> {
    let columns: &[Column] = match family {
        Family::MountainPass => &[Column::MountainPass, Column::Lambda],
        _ => &[Column::Energy, Column::Lambda],
    };
    let mut fits = Vec::new();
    for &end in &[CurveEnd::Small, CurveEnd::Large] {
        for &column in columns {
            let fitted = auto_window(curve, end)
                .ok_or_else(|| "no converged rows".to_string())
                .and_then(|w| fit_power_law(curve, column, w).map_err(|e| e.to_string()));
            let (fit, error) = match fitted {
                Ok(f) => (Some(f), None),
                Err(e) => (None, Some(e)),
            };
            fits.push(FitEntry { column, end, fit, error });
        }
    }
    fits
}

/// Onset fit over the rows in `(ρ★, 2ρ★]`.
pub fn onset_fit(curve: &BranchCurve, rho_star: f64) -> OnsetEntry {
    match fit_onset(curve, Column::Energy, rho_star, (rho_star, 2.0 * rho_star)) {
        Ok(fit) => OnsetEntry { rho_star, fit: Some(fit), error: None },
        Err(e) => OnsetEntry { rho_star, fit: None, error: Some(e.to_string()) },
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Minimizer => "minimizer",
        Family::MountainPass => "mountain-pass",
        Family::Choquard => "choquard",
    }
}

pub(super) fn run(cfg: &RunConfig, out: &Outputs) -> Result<()> {
    let rhos = cfg.rho_list.as_deref().unwrap_or_default();
    let opts = SweepOptions {
        domain: cfg.grid.policy(),
        spot_checks: cfg.spot_checks,
        profile_box: PROFILE_BOX,
        provenance: out.hash().to_string(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| LabError::Config(format!("thread pool: {e}")))?;
    let results = pool.install(|| sweep_families(cfg.alpha, rhos, &cfg.solver, &cfg.families, &opts));
    let rho_star = if cfg.alpha == 1.0 && cfg.families.contains(&Family::Minimizer) {
        let kernel = opts.domain.kernel(cfg.alpha, PROFILE_BOX)?;
        Some(solve_choquard_frequency(cfg.alpha, &kernel, &cfg.solver, None)?.rho())
    } else {
        None
    };
    for (&family, result) in cfg.families.iter().zip(results) {
        let sweep = result?;
        let curve = &sweep.curve;
        let name = family_name(family);
        match cfg.format {
            Format::Csv => out.text(&format!("branch-{name}.csv"), &curve.to_csv())?,
            Format::Json => out.json(&format!("branch-{name}.json"), curve)?,
        };
        let fits = FitsOutput {
            family,
            alpha: cfg.alpha,
            fits: curve_fits(curve, family),
            onset: rho_star.filter(|_| family == Family::Minimizer).map(|r| onset_fit(curve, r)),
            shape: check_shape(curve),
            spot_checks: &curve.spot_checks,
        };
        out.json(&format!("fits-{name}.json"), &fits)?;
        let converged = curve.rows.iter().filter(|r| r.converged).count();
        log::info!("{name}: {converged}/{} rows converged", curve.rows.len());
    }
    Ok(())
}
