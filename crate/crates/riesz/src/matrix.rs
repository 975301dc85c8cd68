//! Product-integration matrix of the reduced kernel on the unit-spacing grid.
//!
//! On every cell the density is replaced by the quartic through the five
//! nearest nodes (mirrored evenly through the origin, zero beyond the outer
//! wall), and the kernel times that polynomial is integrated accurately:
//! Gauss rules away from the diagonal, and next to it an exact treatment of
//! the `|r − s|^{α−1}` (or `ln|r − s|`) factor plus a 16-point rule for the
//! smooth remainder. Homogeneity, `K_α(hr, hs) = h^{α−3}K_α(r, s)`, means the
//! matrix for spacing `h` is `h^α` times the one assembled here.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::constants::riesz_normalization;
use crate::gauss::rule;
use crate::kernel_fn::reduced_kernel_with;

/// Number of cells on each side of the target handled by the singular rule.
const NEAR: i64 = 2;
/// Up to this distance far cells use 8 Gauss points, beyond it 4.
const MID: i64 = 8;

/// Monomial coefficients of the Lagrange basis on nodes `ξ = -2..=2`.
fn lagrange_coefficients() -> [[f64; 5]; 5] {
    let mut out = [[0.0; 5]; 5];
    for (m, row) in out.iter_mut().enumerate() {
        let xm = m as f64 - 2.0;
        let mut poly = vec![1.0];
        let mut denom = 1.0;
        for q in 0..5 {
            if q == m {
                continue;
            }
            let xq = q as f64 - 2.0;
            let mut next = vec![0.0; poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= xq * c;
            }
            poly = next;
            denom *= xm - xq;
        }
        for (k, c) in poly.iter().enumerate() {
            row[k] = c / denom;
        }
    }
    out
}

/// `∫_a^b |y|^β y^j dy` for `β > -1`.
fn power_moment(beta: f64, j: i32, a: f64, b: f64) -> f64 {
    let p = beta + j as f64 + 1.0;
    let mut total = 0.0;
    if b > 0.0 {
        let lo = a.max(0.0);
        total += (b.powf(p) - lo.powf(p)) / p;
    }
    if a < 0.0 {
        let hi = b.min(0.0);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * ((-a).powf(p) - (-hi).powf(p)) / p;
    }
    total
}

/// `∫_a^b y^j ln|y| dy`.
fn log_moment(j: i32, a: f64, b: f64) -> f64 {
    let k = j as f64 + 1.0;
    let prim = |t: f64| if t == 0.0 { 0.0 } else { t.powf(k) * (t.ln() / k - 1.0 / (k * k)) };
    let mut total = 0.0;
    if b > 0.0 {
        total += prim(b) - prim(a.max(0.0));
    }
    if a < 0.0 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * (prim(-a) - prim(-b.min(0.0)));
    }
    total
}

fn binomial(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, q| acc * (k - q) as f64 / (q + 1) as f64)
}

struct RowBuilder {
    alpha: f64,
    beta: f64,
    a_alpha: f64,
    n: usize,
    basis: [[f64; 5]; 5],
}

impl RowBuilder {
    /// `∫_cell K(r,s) s² ξ^k ds` for `k = 0..5`, where `ξ` is measured from the cell centre.
    fn moments(&self, i: usize, c: usize) -> [f64; 5] {
        let r = i as f64 + 0.5;
        let centre = c as f64 + 0.5;
        let d = c as i64 - i as i64;
        let mut mom = [0.0; 5];
        let mut add_rule = |pts: usize, f: &dyn Fn(f64) -> f64| {
            for (s, w) in rule(pts).on(c as f64, c as f64 + 1.0) {
                let g = w * f(s);
                let xi = s - centre;
                let mut p = 1.0;
                for m in mom.iter_mut() {
                    *m += g * p;
                    p *= xi;
                }
            }
        };
        if d.abs() > NEAR {
            let pts = if d.abs() <= MID { 8 } else { 4 };
            add_rule(pts, &|s| reduced_kernel_with(self.alpha, self.a_alpha, r, s) * s * s);
            return mom;
        }
        let two_pi_a = 2.0 * PI * self.a_alpha;
        let log_case = self.beta == 0.0;
        if log_case {
            add_rule(16, &|s| two_pi_a * (s / r) * (r + s).ln());
        } else {
            let kappa = two_pi_a / self.beta;
            add_rule(16, &|s| kappa * (s / r) * (r + s).powf(self.beta));
        }
        // Singular remainder: −(prefactor/r)·∫ s·g(|y|) ξ^k with y = s − r, s = r + y, ξ = y − d.
        let pref = if log_case { -two_pi_a / r } else { -two_pi_a / (self.beta * r) };
        let (a, b) = (d as f64 - 0.5, d as f64 + 0.5);
        let mut j_mom = [0.0; 6];
        for (j, m) in j_mom.iter_mut().enumerate() {
            *m = if log_case { log_moment(j as i32, a, b) } else { power_moment(self.beta, j as i32, a, b) };
        }
        let df = d as f64;
        for (k, m) in mom.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..=k {
                let coef = binomial(k, j) * (-df).powi((k - j) as i32);
                acc += coef * (r * j_mom[j] + j_mom[j + 1]);
            }
            *m += pref * acc;
        }
        mom
    }

    fn row(&self, i: usize, out: &mut [f64]) {
        let n = self.n as i64;
        for c in 0..self.n {
            let mom = self.moments(i, c);
            for (m, coeffs) in self.basis.iter().enumerate() {
                let mut j = c as i64 + m as i64 - 2;
                if j < 0 {
                    j = -1 - j;
                }
                if j >= n {
                    continue;
                }
                let w: f64 = coeffs.iter().zip(&mom).map(|(a, b)| a * b).sum();
                out[j as usize] += w;
            }
        }
    }
}

/// Unit-spacing weights `4π(i+½)²`, with the outer-cell correction of the grid.
pub(crate) fn unit_weights(n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|i| 4.0 * PI * (i as f64 + 0.5).powi(2)).collect();
    w[n - 1] += PI * n as f64 / 3.0;
    w
}

/// Assembles the matrix for spacing 1 and symmetrises it in the quadrature
/// inner product, `M ← ½(M + W⁻¹MᵀW)`, so that the discrete interaction
/// energy is an exactly symmetric bilinear form.
pub fn assemble_unit(alpha: f64, n: usize) -> Vec<f64> {
    let builder =
        RowBuilder { alpha, beta: alpha - 1.0, a_alpha: riesz_normalization(alpha), n, basis: lagrange_coefficients() };
    let mut m = vec![0.0; n * n];
    m.par_chunks_mut(n).enumerate().for_each(|(i, row)| builder.row(i, row));
    let w = unit_weights(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let a = m[i * n + j];
            let b = m[j * n + i];
            // W-symmetric average: w_i M_ij = w_j M_ji after the update.
            let s = 0.5 * (w[i] * a + w[j] * b);
            m[i * n + j] = s / w[i];
            m[j * n + i] = s / w[j];
        }
    }
    m
}

type Slot = Arc<OnceLock<Arc<Vec<f64>>>>;

/// Process-wide cache of unit matrices keyed by `(α, n)`.
pub fn cached_unit(alpha: f64, n: usize) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Slot>>> = OnceLock::new();
    let slot = {
        let mut map = CACHE.get_or_init(Default::default).lock().expect("kernel cache poisoned");
        map.entry((alpha.to_bits(), n)).or_default().clone()
    };
    slot.get_or_init(|| Arc::new(assemble_unit(alpha, n))).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_basis_is_cardinal() {
        let b = lagrange_coefficients();
        for (m, row) in b.iter().enumerate() {
            for q in 0..5 {
                let x = q as f64 - 2.0;
                let v: f64 = row.iter().enumerate().map(|(k, c)| c * x.powi(k as i32)).sum();
                let want = if q == m { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn singular_moments_match_brute_force() {
        // ∫_{-0.5}^{1.5} |y|^{-1/2} y^3 dy and ∫ y² ln|y| on the same range
        let f = |g: &dyn Fn(f64) -> f64| {
            let m = 2_000_000;
            let (a, b) = (-0.5f64, 1.5f64);
            let h = (b - a) / m as f64;
            (0..m).map(|k| g(a + (k as f64 + 0.5) * h) * h).sum::<f64>()
        };
        let p = power_moment(-0.5, 3, -0.5, 1.5);
        let q = f(&|y: f64| y.abs().powf(-0.5) * y.powi(3));
        assert!((p - q).abs() < 1e-6, "{p} {q}");
        let l = log_moment(2, -0.5, 1.5);
        let q = f(&|y: f64| y * y * y.abs().ln());
        assert!((l - q).abs() < 1e-8, "{l} {q}");
    }
}
