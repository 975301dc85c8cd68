//! The angular average of `A_α|x − y|^{α−3}` over spheres.

use std::f64::consts::PI;

use crate::constants::riesz_normalization;

/// Reduced kernel: `(I_α ∗ f)(r) = ∫₀^∞ K_α(r, s) f(s) s² ds` for radial `f`.
///
/// `K_α(r,s) = 2πA_α((r+s)^{α−1} − |r−s|^{α−1})/((α−1)rs)`, with the
/// logarithmic limit at `α = 1`. The difference of powers is evaluated as
/// `|r−s|^β·expm1(β·ln(1 + 2min/|r−s|))/β` to avoid cancellation.
pub fn reduced_kernel(alpha: f64, r: f64, s: f64) -> f64 {
    reduced_kernel_with(alpha, riesz_normalization(alpha), r, s)
}

pub(crate) fn reduced_kernel_with(alpha: f64, a_alpha: f64, r: f64, s: f64) -> f64 {
    let beta = alpha - 1.0;
    let gap = (r - s).abs();
    let lo = r.min(s);
    let pref = 2.0 * PI * a_alpha / (r * s);
    if gap == 0.0 {
        return if beta > 0.0 { pref * (2.0 * lo).powf(beta) / beta } else { f64::INFINITY };
    }
    let log_ratio = (2.0 * lo / gap).ln_1p();
    if beta == 0.0 {
        pref * log_ratio
    } else {
        pref * gap.powf(beta) * (beta * log_ratio).exp_m1() / beta
    }
}
