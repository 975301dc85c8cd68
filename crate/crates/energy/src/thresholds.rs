//! Closed-form constants and barriers for `0 < α < 1`.

use gpp_riesz::RieszConstants;
use serde::{Deserialize, Serialize};

use crate::error::{EnergyError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConstants {
    /// `K_α = (3/4)α((3−α)/3)^{1/α}(1−α)^{(1−α)/α}`.
    pub k_alpha: f64,
    /// Lower bound for the existence threshold: `(K_α^{1/2} c_α^{1/(2α)} c̄^{4/3})⁻¹`.
    pub bar_k_alpha: f64,
    /// Supremum of admissible cone constants `H`.
    pub h_bound: f64,
}

fn check_subcritical(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(EnergyError::InvalidArgument(format!("defined only for 0 < α < 1, got {alpha}")))
    }
}

pub fn k_alpha(alpha: f64) -> f64 {
    0.75 * alpha * ((3.0 - alpha) / 3.0).powf(1.0 / alpha) * (1.0 - alpha).powf((1.0 - alpha) / alpha)
}

/// `min_t (¾Bt − ((3−α)/4)C t^{1−α}) = −(C/B^{1−α})^{1/α} K_α`.
pub fn fiber_min_law(b: f64, c: f64, alpha: f64) -> f64 {
    -(c / b.powf(1.0 - alpha)).powf(1.0 / alpha) * k_alpha(alpha)
}

pub fn threshold_constants(alpha: f64) -> Result<ThresholdConstants> {
    check_subcritical(alpha)?;
    let rc = RieszConstants::new(alpha);
    let k = k_alpha(alpha);
    let bar_k = 1.0 / (k.sqrt() * rc.c_alpha_hls.powf(0.5 / alpha) * rc.c_bar_gn.powf(4.0 / 3.0));
    let h_bound = 0.25
        * (3.0 - alpha)
        * (2.0 / (3.0 * rc.c_bar_gn.powi(4))).powf(1.0 - alpha)
        * alpha.powf(alpha)
        * (1.0 - alpha).powf(1.0 - alpha);
    Ok(ThresholdConstants { k_alpha: k, bar_k_alpha: bar_k, h_bound })
}

/// Maximiser of `g₂(R) = R²/2 − (c̄̄_α/4)ρ^{1+α}R^{3−α}` and the maximum value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Barrier {
    pub r_rho: f64,
    pub g2_at_r: f64,
}

pub fn g2(r: f64, rho: f64, alpha: f64, constants: &RieszConstants) -> f64 {
    0.5 * r * r - 0.25 * constants.c_barbar_alpha * rho.powf(1.0 + alpha) * r.powf(3.0 - alpha)
}

pub fn barrier(rho: f64, alpha: f64, constants: &RieszConstants) -> Result<Barrier> {
    check_subcritical(alpha)?;
    if !(rho > 0.0) {
        return Err(EnergyError::InvalidArgument(format!("mass parameter must be positive, got {rho}")));
    }
    let r_rho = (4.0 / ((3.0 - alpha) * constants.c_barbar_alpha * rho.powf(1.0 + alpha))).powf(1.0 / (1.0 - alpha));
    Ok(Barrier { r_rho, g2_at_r: r_rho * r_rho * (1.0 - alpha) / (2.0 * (3.0 - alpha)) })
}
