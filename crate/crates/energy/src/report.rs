use gpp_radial::RadialField;
use gpp_riesz::RieszKernel;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// The three building blocks `A = |∇u|₂²`, `B = |u|₄⁴`, `C = 𝒟(u)`, the
/// squared mass, and every functional assembled from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub rho2: f64,
    /// `½A + ¼B − ¼C`.
    #[serde(rename = "F")]
    pub f: f64,
    /// `½A − ¼C`.
    #[serde(rename = "E_choquard")]
    pub e_choquard: f64,
    /// `¼B − ¼C`.
    #[serde(rename = "E_tf")]
    pub e_tf: f64,
    /// Multiplier from testing the equation with `u`: `(C − A − B)/ρ²`.
    pub lambda_nehari: f64,
}

impl EnergyReport {
    pub fn from_parts(a: f64, b: f64, c: f64, rho2: f64) -> Self {
        let lambda_nehari = if rho2 > 0.0 { (c - a - b) / rho2 } else { 0.0 };
        Self {
            a,
            b,
            c,
            rho2,
            f: 0.5 * a + 0.25 * b - 0.25 * c,
            e_choquard: 0.5 * a - 0.25 * c,
            e_tf: 0.25 * b - 0.25 * c,
            lambda_nehari,
        }
    }

    /// Energy with the quartic term weighted by `quartic` (1 for the full
    /// functional, 0 for the Choquard one).
    pub fn energy_with(&self, quartic: f64) -> f64 {
        0.5 * self.a + 0.25 * quartic * self.b - 0.25 * self.c
    }

    /// Nehari multiplier with the quartic term weighted by `quartic`.
    pub fn nehari_lambda_with(&self, quartic: f64) -> f64 {
        (self.c - self.a - quartic * self.b) / self.rho2
    }

    /// Same report after `u ↦ s·u`.
    pub fn scaled_amplitude(&self, s: f64) -> Self {
        let s2 = s * s;
        Self::from_parts(self.a * s2, self.b * s2 * s2, self.c * s2 * s2, self.rho2 * s2)
    }
}

/// Quadrature values of `A`, `B`, `C` and `|u|₂²`.
pub fn evaluate(u: &RadialField, kernel: &RieszKernel) -> Result<EnergyReport> {
    let c = kernel.interaction_energy(u)?;
    Ok(EnergyReport::from_parts(u.dirichlet_energy(), u.l4_norm4(), c, u.mass()))
}
