//! Fourth-order discretisation of `−Δ` for radial functions.
//!
//! With `v = r·u` the radial Laplacian becomes `−Δu = −v''/r`. The second
//! derivative of `v` uses the five-point stencil; ghost values are odd
//! reflections of `v` through `r = 0` (regularity, `v` is odd) and through
//! `r = r_max` (homogeneous Dirichlet). The resulting matrix `S ≈ −d²/dr²`
//! is symmetric positive definite, so the discrete Dirichlet form
//! `A(u) = 4πh·vᵀSv` is a positive quadratic form and the discrete operator
//! `L = W⁻¹(4πh·RSR)` is self-adjoint for the quadrature inner product.

use std::f64::consts::PI;

use crate::band::Band5;
use crate::grid::RadialGrid;

/// Rows of `12h²·S` in band layout.
fn stencil_rows(n: usize) -> Vec<[f64; 5]> {
    let mut rows = vec![[1.0, -16.0, 30.0, -16.0, 1.0]; n];
    rows[0] = [0.0, 0.0, 46.0, -17.0, 1.0];
    rows[1] = [0.0, -17.0, 30.0, -16.0, 1.0];
    rows[n - 2] = [1.0, -16.0, 30.0, -17.0, 0.0];
    rows[n - 1] = [1.0, -17.0, 46.0, 0.0, 0.0];
    rows
}

/// `W·L` as a symmetric band matrix: the Hessian of `½A(u)`.
pub fn stiffness(grid: &RadialGrid) -> Band5 {
    let n = grid.n();
    let h = grid.h();
    let r = grid.nodes();
    let c = 4.0 * PI * h / (12.0 * h * h);
    let rows = stencil_rows(n)
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = [0.0; 5];
            for (k, coef) in s.iter().enumerate() {
                let j = i as isize + k as isize - 2;
                if j >= 0 && (j as usize) < n {
                    row[k] = c * coef * r[i] * r[j as usize];
                }
            }
            row
        })
        .collect();
    Band5::from_rows(rows)
}

/// `S·v` for `v = r·u`, i.e. `−v''` sampled at the nodes.
fn second_difference(grid: &RadialGrid, u: &[f64]) -> Vec<f64> {
    let n = grid.n();
    let h = grid.h();
    let v: Vec<f64> = grid.nodes().iter().zip(u).map(|(r, x)| r * x).collect();
    let mut out = vec![0.0; n];
    Band5::from_rows(stencil_rows(n)).apply(&v, &mut out);
    let s = 1.0 / (12.0 * h * h);
    out.iter_mut().for_each(|x| *x *= s);
    out
}

/// Discrete `−Δu` at the nodes.
pub fn neg_laplacian(grid: &RadialGrid, u: &[f64]) -> Vec<f64> {
    let h = grid.h();
    let sv = second_difference(grid, u);
    grid.nodes().iter().zip(grid.weights()).zip(sv).map(|((r, w), s)| 4.0 * PI * h * r * s / w).collect()
}

/// Discrete `∫|∇u|²`.
pub fn dirichlet_form(grid: &RadialGrid, u: &[f64]) -> f64 {
    let sv = second_difference(grid, u);
    let h = grid.h();
    4.0 * PI * h * grid.nodes().iter().zip(u).zip(sv).map(|((r, x), s)| r * x * s).sum::<f64>()
}
