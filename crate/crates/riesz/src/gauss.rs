//! Gauss–Legendre rules on `[-1, 1]`.

use std::f64::consts::PI;
use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Roots of `P_n` by Newton's method from Chebyshev-like guesses.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Self { nodes, weights }
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes.iter().zip(&self.weights).map(move |(x, w)| (m + h * x, h * w))
    }
}

pub fn rule(n: usize) -> &'static GaussRule {
    static R4: OnceLock<GaussRule> = OnceLock::new();
    static R8: OnceLock<GaussRule> = OnceLock::new();
    static R16: OnceLock<GaussRule> = OnceLock::new();
    match n {
        4 => R4.get_or_init(|| GaussRule::new(4)),
        8 => R8.get_or_init(|| GaussRule::new(8)),
        16 => R16.get_or_init(|| GaussRule::new(16)),
        _ => panic!("no cached Gauss rule with {n} points"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_high_degree_polynomials() {
        for n in [4usize, 8, 16] {
            let r = GaussRule::new(n);
            let deg = 2 * n - 1;
            let s: f64 = r.on(0.0, 1.0).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((s - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14);
        }
    }
}
