use gpp_radial::{GppParams, RadialField};
use gpp_solvers::{choquard_seed, solve_choquard_mp, solve_mp_type2, SolveResult, SolverConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{BranchCurve, BranchRow, SpotCheck};
use crate::domain::{solve_minimizer, DomainPolicy, Functional};
use crate::error::{BranchError, Result};

/// Largest Nehari or Pohozaev defect a converged row may carry.
pub const IDENTITY_GATE: f64 = 1e-6;

/// Which family of states a sweep follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Global or local minimisers of the full functional.
    Minimizer,
    /// Mountain-pass states on the upper fiber branch, `0 < α < 1`.
    MountainPass,
    /// Minimisers of the Choquard functional at mass `ρ²`, `1 < α < 3`.
    Choquard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepOptions {
    pub domain: DomainPolicy,
    /// Number of rows re-solved from a cold start.
    pub spot_checks: usize,
    /// Box radius of the unit-mass mountain-pass profile seeding the mountain-pass family.
    pub profile_box: f64,
    /// Recorded with the curve.
    pub provenance: String,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { domain: DomainPolicy::default(), spot_checks: 3, profile_box: 30.0, provenance: String::new() }
    }
}

/// A branch with the states behind its rows.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub curve: BranchCurve,
    /// `None` where no state could be computed.
    pub states: Vec<Option<SolveResult>>,
}

fn check_inputs(alpha: f64, rhos: &[f64], family: Family) -> Result<()> {
    if rhos.is_empty() {
        return Err(BranchError::InvalidArgument("no masses to sweep".into()));
    }
    if rhos.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(BranchError::InvalidArgument("masses must be positive".into()));
    }
    if rhos.windows(2).any(|p| p[1] <= p[0]) {
        return Err(BranchError::InvalidArgument("masses must be strictly increasing".into()));
    }
    let ok = match family {
        Family::Minimizer => alpha > 0.0 && alpha < 3.0,
        Family::MountainPass => alpha > 0.0 && alpha < 1.0,
        Family::Choquard => alpha > 1.0 && alpha < 3.0,
    };
    if !ok {
        return Err(BranchError::InvalidArgument(format!("{family:?} family is not available at α = {alpha}")));
    }
    Ok(())
}

fn gated(mut row: BranchRow, result: &SolveResult) -> BranchRow {
    let r = &result.residuals;
    if !(r.nehari.abs() <= IDENTITY_GATE && r.pohozaev.abs() <= IDENTITY_GATE) {
        row.converged = false;
    }
    row
}

/// Follows one family along increasing mass.
///
/// Minimiser rows are warm-started from the previous converged row. A row
/// whose solve fails becomes an unconverged row; the sweep carries on.
pub fn sweep(alpha: f64, rhos: &[f64], cfg: &SolverConfig, family: Family, opts: &SweepOptions) -> Result<Sweep> {
    check_inputs(alpha, rhos, family)?;
    cfg.validate()?;
    opts.domain.validate()?;
    let mut curve = BranchCurve::new(alpha, opts.provenance.clone());
    let mut states = Vec::with_capacity(rhos.len());
    let profile = match family {
        Family::MountainPass => {
            let kernel = opts.domain.kernel(alpha, opts.profile_box)?;
            Some(solve_choquard_mp(alpha, &kernel, cfg, None)?)
        }
        _ => None,
    };
    let mut warm: Option<RadialField> = None;
    for &rho in rhos {
        let params = GppParams::new(alpha, rho)?;
        let solved = match (family, &profile) {
            (Family::MountainPass, Some(v0)) => choquard_seed(params, &v0.result.state, &v0.kernel)
                .and_then(|(seed, kernel)| solve_mp_type2(params, &kernel, cfg, Some(&seed)))
                .map_err(BranchError::from),
            (Family::Choquard, _) => solve_minimizer(Functional::Choquard, params, cfg, &opts.domain, warm.as_ref()),
            _ => solve_minimizer(Functional::Full, params, cfg, &opts.domain, warm.as_ref()),
        };
        match solved {
            Ok(result) => {
                let row = BranchRow { rho, ..gated(BranchRow::from_result(&result), &result) };
                warm = row.converged.then(|| result.state.clone());
                curve.rows.push(row);
                states.push(Some(result));
            }
            Err(_) => {
                warm = None;
                curve.rows.push(BranchRow::failed(rho, family_kind(family, alpha)));
                states.push(None);
            }
        }
    }
    if family != Family::MountainPass {
        curve.spot_checks = spot_checks(alpha, cfg, family, opts, &curve)?;
    }
    Ok(Sweep { curve, states })
}

fn family_kind(family: Family, alpha: f64) -> gpp_solvers::SolveKind {
    use gpp_solvers::SolveKind;
    match family {
        Family::Minimizer if alpha < 1.0 => SolveKind::LocalMin,
        Family::Minimizer => SolveKind::GlobalMin,
        Family::MountainPass => SolveKind::MpType2,
        Family::Choquard => SolveKind::ChoquardMin,
    }
}

/// Cold-start re-solves at the first, middle and last converged rows.
fn spot_checks(
    alpha: f64,
    cfg: &SolverConfig,
    family: Family,
    opts: &SweepOptions,
    curve: &BranchCurve,
) -> Result<Vec<SpotCheck>> {
    let converged: Vec<&BranchRow> = curve.converged_rows().collect();
    let k = opts.spot_checks.min(converged.len());
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut picks: Vec<usize> = (0..k).map(|i| if k == 1 { 0 } else { i * (converged.len() - 1) / (k - 1) }).collect();
    picks.dedup();
    let functional = if family == Family::Choquard { Functional::Choquard } else { Functional::Full };
    let mut checks = Vec::with_capacity(picks.len());
    for i in picks {
        let row = converged[i];
        let params = GppParams::new(alpha, row.rho)?;
        let cold = solve_minimizer(functional, params, cfg, &opts.domain, None).ok();
        checks.push(SpotCheck {
            rho: row.rho,
            warm_m: row.m,
            cold_m: cold.as_ref().map_or(f64::NAN, |c| c.energy()),
            cold_converged: cold.as_ref().is_some_and(|c| c.converged),
        });
    }
    Ok(checks)
}

/// Independent sweeps, one per family, run concurrently.
pub fn sweep_families(
    alpha: f64,
    rhos: &[f64],
    cfg: &SolverConfig,
    families: &[Family],
    opts: &SweepOptions,
) -> Vec<Result<Sweep>> {
    families.par_iter().map(|&f| sweep(alpha, rhos, cfg, f, opts)).collect()
}
