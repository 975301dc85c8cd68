//! Discrete functional `½uᵀKu + (κ/4)Σwu⁴ − ¼Σwu²(Mu²)` and its derivatives.
//!
//! `K` is the symmetric stiffness matrix (`W` times the discrete `−Δ`),
//! `W` the quadrature weights and `M` the Riesz matrix. Gradients are taken
//! in the `W` inner product, so the gradient of the functional is
//! `Lu + κu³ − Φu` with `L = W⁻¹K` and `Φ = Mu²`.

use gpp_radial::{laplacian, Band5, Band5Lu};
use gpp_riesz::RieszKernel;

pub(crate) struct Problem<'k> {
    pub kernel: &'k RieszKernel,
    pub stiff: Band5,
    pub w: Vec<f64>,
    pub quartic: f64,
}

/// The quantities needed repeatedly for one state.
#[derive(Debug, Clone)]
pub(crate) struct Eval {
    pub phi: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mass: f64,
}

impl Eval {
    pub fn energy(&self, quartic: f64) -> f64 {
        0.5 * self.a + 0.25 * quartic * self.b - 0.25 * self.c
    }

    pub fn nehari_lambda(&self, quartic: f64) -> f64 {
        (self.c - self.a - quartic * self.b) / self.mass
    }
}

impl<'k> Problem<'k> {
    pub fn new(kernel: &'k RieszKernel, quartic: f64) -> Self {
        let grid = kernel.grid();
        Self { kernel, stiff: laplacian::stiffness(grid), w: grid.weights().to_vec(), quartic }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn potential(&self, u: &[f64]) -> Vec<f64> {
        let sq: Vec<f64> = u.iter().map(|v| v * v).collect();
        let mut phi = vec![0.0; u.len()];
        self.kernel.apply_slice(&sq, &mut phi);
        phi
    }

    pub fn eval(&self, u: &[f64]) -> Eval {
        let phi = self.potential(u);
        let mut ku = vec![0.0; u.len()];
        self.stiff.apply(u, &mut ku);
        let a = dot(u, &ku);
        let (mut b, mut c, mut mass) = (0.0, 0.0, 0.0);
        for ((&v, &w), &p) in u.iter().zip(&self.w).zip(&phi) {
            let v2 = v * v;
            mass += w * v2;
            b += w * v2 * v2;
            c += w * v2 * p;
        }
        Eval { phi, a, b, c, mass }
    }

    /// Discrete `−Δu`.
    pub fn neg_lap(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; u.len()];
        self.stiff.apply(u, &mut out);
        out.iter_mut().zip(&self.w).for_each(|(o, w)| *o /= w);
        out
    }

    /// `Lu + λu + κu³ − Φu`.
    pub fn residual(&self, u: &[f64], phi: &[f64], lambda: f64) -> Vec<f64> {
        let mut r = self.neg_lap(u);
        for i in 0..u.len() {
            let v = u[i];
            r[i] += lambda * v + self.quartic * v * v * v - phi[i] * v;
        }
        r
    }

    /// Scale used to make residuals relative: sup of the individual terms.
    pub fn residual_scale(&self, u: &[f64], phi: &[f64], lambda: f64) -> f64 {
        let lap = self.neg_lap(u);
        let sup = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, |m, v| m.max(v.abs()));
        let umax = sup(&mut u.iter().copied());
        sup(&mut lap.into_iter())
            + lambda.abs() * umax
            + self.quartic * umax.powi(3)
            + sup(&mut phi.iter().zip(u).map(|(p, v)| p * v))
    }

    /// Action of the linearisation `L + λ + 3κu² − Φ − 2U M U` on `du`.
    pub fn jacobian_apply(&self, u: &[f64], phi: &[f64], lambda: f64, du: &[f64], out: &mut [f64]) {
        let n = u.len();
        self.stiff.apply(du, out);
        let ud: Vec<f64> = u.iter().zip(du).map(|(a, b)| a * b).collect();
        let mut m_ud = vec![0.0; n];
        self.kernel.apply_slice(&ud, &mut m_ud);
        for i in 0..n {
            let v = u[i];
            out[i] = out[i] / self.w[i] + (lambda + 3.0 * self.quartic * v * v - phi[i]) * du[i] - 2.0 * v * m_ud[i];
        }
    }

    /// Factor `τK + W·diag(d)`; `None` if a pivot vanishes.
    pub fn factor_shifted(&self, tau: f64, diag: &[f64]) -> Option<Band5Lu> {
        let mut m = self.stiff.clone();
        let scale = vec![tau; self.n()];
        m.scale_rows(&scale);
        let d: Vec<f64> = diag.iter().zip(&self.w).map(|(d, w)| d * w).collect();
        m.add_diagonal(&d);
        m.factor()
    }

    pub fn w_dot(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).zip(&self.w).map(|((x, y), w)| x * y * w).sum()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
