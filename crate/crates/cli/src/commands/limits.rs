use gpp_branch::{limit_profile_error, solve_minimizer, sweep, Family, Functional, Metric, SweepOptions};
use gpp_radial::{GppParams, RescaleKind};
use gpp_solvers::{solve_choquard_frequency, solve_choquard_mp, solve_tf, SolveResult};
use serde::Serialize;

use super::solve::{PROFILE_BOX, TF_BOX};
use crate::config::{Format, RunConfig};
use crate::error::Result;
use crate::output::{csv_table, Outputs};

/// Distances of one rescaled state to one limit profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitRow {
    pub rho: f64,
    pub reference: &'static str,
    pub converged: bool,
    pub l2: f64,
    pub l4: f64,
    pub h1: f64,
}

struct Reference {
    name: &'static str,
    state: SolveResult,
    kind: fn(&SolveResult) -> RescaleKind,
}

/// Limit-profile distances along the configured masses.
///
/// `α > 1`: minimisers against the Thomas–Fermi and Choquard profiles;
/// `α = 1`: minimisers in frequency normalisation against `w★`;
/// `α < 1`: mountain-pass states against the Choquard mountain pass.
pub fn limit_table(cfg: &RunConfig) -> Result<Vec<LimitRow>> {
    let alpha = cfg.alpha;
    let policy = cfg.grid.policy();
    let solver = &cfg.solver;
    let profile_kernel = || policy.kernel(alpha, PROFILE_BOX);
    let (family, references) = if alpha > 1.0 {
        let tf = solve_tf(alpha, &policy.kernel(alpha, cfg.grid.fixed_or(TF_BOX))?, solver)?.result;
        let w0 = solve_minimizer(Functional::Choquard, GppParams::new(alpha, 1.0)?, solver, &policy, None)?;
        (
            Family::Minimizer,
            vec![
                Reference { name: "thomas-fermi", state: tf, kind: |_| RescaleKind::ThomasFermi },
                Reference { name: "choquard", state: w0, kind: |_| RescaleKind::ChoquardSmallMass },
            ],
        )
    } else if alpha == 1.0 {
        let w = solve_choquard_frequency(alpha, &profile_kernel()?, solver, None)?;
        let kind: fn(&SolveResult) -> RescaleKind = |r| RescaleKind::Frequency { lambda: r.lambda };
        (Family::Minimizer, vec![Reference { name: "frequency", state: w, kind }])
    } else {
        let v0 = solve_choquard_mp(alpha, &profile_kernel()?, solver, None)?.result;
        let kind: fn(&SolveResult) -> RescaleKind = |_| RescaleKind::ChoquardLargeMass;
        (Family::MountainPass, vec![Reference { name: "choquard-mountain-pass", state: v0, kind }])
    };
    let rhos = cfg.rho_list.as_deref().unwrap_or_default();
    let opts = SweepOptions { domain: policy, spot_checks: 0, profile_box: PROFILE_BOX, provenance: String::new() };
    let branch = sweep(alpha, rhos, solver, family, &opts)?;
    let mut rows = Vec::new();
    for (row, state) in branch.curve.rows.iter().zip(&branch.states) {
        for reference in &references {
            let err = |m| {
                state
                    .as_ref()
                    .and_then(|s| limit_profile_error(s, &reference.state, (reference.kind)(s), m).ok())
                    .unwrap_or(f64::NAN)
            };
            rows.push(LimitRow {
                rho: row.rho,
                reference: reference.name,
                converged: row.converged,
                l2: err(Metric::L2),
                l4: err(Metric::L4),
                h1: err(Metric::H1),
            });
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct LimitsOutput {
    alpha: f64,
    rows: Vec<LimitRow>,
}

pub(super) fn run(cfg: &RunConfig, out: &Outputs) -> Result<()> {
    let rows = limit_table(cfg)?;
    match cfg.format {
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.rho.to_string(),
                        r.reference.to_string(),
                        r.converged.to_string(),
                        format!("{:.12e}", r.l2),
                        format!("{:.12e}", r.l4),
                        format!("{:.12e}", r.h1),
                    ]
                })
                .collect();
            out.text(
                "limits.csv",
                &csv_table(out.hash(), &["rho", "reference", "converged", "l2", "l4", "h1"], &table),
            )?;
        }
        Format::Json => {
            out.json("limits.json", &LimitsOutput { alpha: cfg.alpha, rows })?;
        }
    }
    Ok(())
}
