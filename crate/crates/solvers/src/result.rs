use gpp_energy::{EnergyReport, IdentityResiduals};
use gpp_radial::RadialField;
use serde::{Deserialize, Serialize};

/// Which family a state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveKind {
    GlobalMin,
    LocalMin,
    MpType2,
    ChoquardMin,
    ChoquardFrequency,
    ChoquardMp,
    ThomasFermi,
}

impl SolveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveKind::GlobalMin => "global-min",
            SolveKind::LocalMin => "local-min",
            SolveKind::MpType2 => "mp-type2",
            SolveKind::ChoquardMin => "choquard-min",
            SolveKind::ChoquardFrequency => "choquard-frequency",
            SolveKind::ChoquardMp => "choquard-mp",
            SolveKind::ThomasFermi => "thomas-fermi",
        }
    }

    /// Weight of the quartic term in the functional this kind refers to.
    pub fn quartic(&self) -> f64 {
        match self {
            SolveKind::GlobalMin | SolveKind::LocalMin | SolveKind::MpType2 => 1.0,
            _ => 0.0,
        }
    }
}

/// Why an iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Converged,
    /// Budget exhausted before the residual target was met.
    MaxIterations,
    /// The flow spread out to the walls of the box: no localised critical point.
    Collapsed,
    /// Newton's method stalled.
    Stalled,
}

/// A computed state with its diagnostics.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub state: RadialField,
    pub alpha: f64,
    /// Lagrange multiplier (frequency) of the state.
    pub lambda: f64,
    pub report: EnergyReport,
    pub residuals: IdentityResiduals,
    pub kind: SolveKind,
    pub iterations: usize,
    pub converged: bool,
    pub termination: Termination,
    /// Energy after each accepted gradient-flow step (empty when no flow ran).
    pub energy_trace: Vec<f64>,
}

impl SolveResult {
    pub fn rho(&self) -> f64 {
        self.report.rho2.sqrt()
    }

    /// Energy of the functional the state belongs to.
    pub fn energy(&self) -> f64 {
        match self.kind {
            SolveKind::ThomasFermi => self.report.e_tf,
            k => self.report.energy_with(k.quartic()),
        }
    }

    pub fn summary(&self) -> SolveSummary {
        SolveSummary {
            alpha: self.alpha,
            rho: self.rho(),
            kind: self.kind,
            energy: self.energy(),
            lambda: self.lambda,
            report: self.report,
            residuals: self.residuals,
            iterations: self.iterations,
            converged: self.converged,
            termination: self.termination,
            n: self.state.grid().n(),
            r_max: self.state.grid().r_max(),
        }
    }
}

/// Scalar part of a [`SolveResult`], suitable for JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub alpha: f64,
    pub rho: f64,
    pub kind: SolveKind,
    pub energy: f64,
    pub lambda: f64,
    pub report: EnergyReport,
    pub residuals: IdentityResiduals,
    pub iterations: usize,
    pub converged: bool,
    pub termination: Termination,
    pub n: usize,
    pub r_max: f64,
}
