use std::fmt::Write as _;
use std::path::Path;

use gpp_solvers::{SolveKind, SolveResult, Termination};
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CSV_HEADER: &str = "alpha,rho,m,lambda,A,B,C,kind,converged";

/// One solved mass on a branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchRow {
    pub rho: f64,
    /// Energy of the state (the Choquard energy for Choquard rows).
    pub m: f64,
    pub lambda: f64,
    /// Multiplier recomputed from `A`, `B` and the mass.
    pub lambda_enp: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub kind: SolveKind,
    pub converged: bool,
    pub termination: Termination,
    pub r_max: f64,
}

impl BranchRow {
    pub fn from_result(r: &SolveResult) -> Self {
        let rho = r.rho();
        let quartic = r.kind.quartic();
        let lambda_enp = if quartic == 1.0 {
            gpp_energy::solve_enp_system(r.report.a, r.report.b, rho, r.alpha).map(|s| s.lambda).unwrap_or(f64::NAN)
        } else {
            r.report.nehari_lambda_with(quartic)
        };
        Self {
            rho,
            m: r.energy(),
            lambda: r.lambda,
            lambda_enp,
            a: r.report.a,
            b: r.report.b,
            c: r.report.c,
            kind: r.kind,
            converged: r.converged,
            termination: r.termination,
            r_max: r.state.grid().r_max(),
        }
    }

    /// Row for a mass at which no state could be computed at all.
    pub fn failed(rho: f64, kind: SolveKind) -> Self {
        Self {
            rho,
            m: f64::NAN,
            lambda: f64::NAN,
            lambda_enp: f64::NAN,
            a: f64::NAN,
            b: f64::NAN,
            c: f64::NAN,
            kind,
            converged: false,
            termination: Termination::Stalled,
            r_max: f64::NAN,
        }
    }

    pub fn collapsed(&self) -> bool {
        self.termination == Termination::Collapsed
    }
}

/// Warm-started result against an independent cold start at the same mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub rho: f64,
    pub warm_m: f64,
    pub cold_m: f64,
    pub cold_converged: bool,
}

impl SpotCheck {
    pub fn agrees(&self, rtol: f64) -> bool {
        self.cold_converged && (self.warm_m - self.cold_m).abs() <= rtol * self.warm_m.abs()
    }
}

/// Rows of one family along increasing mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchCurve {
    pub alpha: f64,
    pub rows: Vec<BranchRow>,
    /// Hash of the configuration that produced the curve.
    pub provenance: String,
    #[serde(default)]
    pub spot_checks: Vec<SpotCheck>,
}

impl BranchCurve {
    pub fn new(alpha: f64, provenance: impl Into<String>) -> Self {
        Self { alpha, rows: Vec::new(), provenance: provenance.into(), spot_checks: Vec::new() }
    }

    pub fn converged_rows(&self) -> impl Iterator<Item = &BranchRow> {
        self.rows.iter().filter(|r| r.converged)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# config_hash = {}\n{CSV_HEADER}\n", self.provenance);
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{},{}",
                self.alpha,
                r.rho,
                r.m,
                r.lambda,
                r.a,
                r.b,
                r.c,
                r.kind.as_str(),
                r.converged
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}
