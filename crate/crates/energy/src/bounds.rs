//! Interpolation inequalities on the mass sphere, evaluated as `(lhs, rhs)` pairs.

use gpp_riesz::RieszConstants;
use serde::{Deserialize, Serialize};

use crate::report::EnergyReport;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// The three bounds
/// `|u|₄ ≤ c̄ ρ^{1/4} A^{3/8}`, `C ≤ c_α ρ^{4α/3} |u|₄^{4−4α/3}`, `C ≤ c̄̄_α ρ^{1+α} A^{(3−α)/2}`.
pub fn interpolation_bounds(report: &EnergyReport, alpha: f64, k: &RieszConstants) -> [InequalityCheck; 3] {
    let rho = report.rho2.sqrt();
    let l4 = report.b.powf(0.25);
    [
        InequalityCheck { lhs: l4, rhs: k.c_bar_gn * rho.powf(0.25) * report.a.powf(0.375) },
        InequalityCheck {
            lhs: report.c,
            rhs: k.c_alpha_hls * rho.powf(4.0 * alpha / 3.0) * l4.powf(4.0 - 4.0 * alpha / 3.0),
        },
        InequalityCheck {
            lhs: report.c,
            rhs: k.c_barbar_alpha * rho.powf(1.0 + alpha) * report.a.powf(0.5 * (3.0 - alpha)),
        },
    ]
}

/// Scale-invariant quotient `A^{(3−α)/2} |u|₂^{1+α} / C`.
pub fn gn_quotient(report: &EnergyReport, alpha: f64) -> f64 {
    report.a.powf(0.5 * (3.0 - alpha)) * report.rho2.powf(0.5 * (1.0 + alpha)) / report.c
}
