use std::f64::consts::PI;

use statrs::function::gamma::gamma;

/// `A_α` in `I_α(x) = A_α |x|^{α−3}`.
pub fn riesz_normalization(alpha: f64) -> f64 {
    gamma((3.0 - alpha) / 2.0) / (PI.powf(1.5) * 2f64.powf(alpha) * gamma(alpha / 2.0))
}

/// Sobolev-type constant `c_* = (2/π)^{2/3}/√3` bounding the GN constants.
pub fn sobolev_bound() -> f64 {
    (2.0 / PI).powf(2.0 / 3.0) / 3f64.sqrt()
}

/// Closed-form constants attached to a Riesz order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RieszConstants {
    /// Kernel normalisation `A_α`.
    pub a_alpha: f64,
    /// HLS constant: `𝒟(u) ≤ c_α |u|_{12/(3+α)}⁴`.
    pub c_alpha_hls: f64,
    /// Upper bound `c̄ = c_*^{3/4}` for the `L⁴` GN constant.
    pub c_bar_gn: f64,
    /// `c̄̄_α = c_α c̄^{4 − 4α/3}`, so that `𝒟(u) ≤ c̄̄_α ρ^{1+α} |∇u|₂^{3−α}` on the mass sphere.
    pub c_barbar_alpha: f64,
}

impl RieszConstants {
    pub fn new(alpha: f64) -> Self {
        let a_alpha = riesz_normalization(alpha);
        let c_alpha_hls = gamma((3.0 - alpha) / 2.0)
            / (PI.powf(2.0 * alpha / 3.0) * 2f64.powf(alpha / 3.0) * gamma((3.0 + alpha) / 2.0));
        let c_bar_gn = sobolev_bound().powf(0.75);
        let c_barbar_alpha = c_alpha_hls * c_bar_gn.powf(4.0 - 4.0 * alpha / 3.0);
        Self { a_alpha, c_alpha_hls, c_bar_gn, c_barbar_alpha }
    }
}
