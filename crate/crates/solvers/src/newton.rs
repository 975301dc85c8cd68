//! Newton–Krylov polishing of critical points.
//!
//! The mass-constrained problem is solved for `(u, λ)` with the bordered
//! system `[J u; (Wu)ᵀ/ρ 0]`, the fixed-frequency problem for `u` alone.
//! Both use GMRES preconditioned by the banded part `L + λ₊ + 3κu²`, so the
//! preconditioned operator is the identity plus a compact perturbation.

use gpp_radial::Band5Lu;

use crate::krylov::gmres;
use crate::problem::Problem;

/// Relative residual below which Newton stops early.
const FLOOR: f64 = 1e-11;
const GMRES_RESTART: usize = 60;
const GMRES_MAX: usize = 600;

#[derive(Debug, Clone)]
pub(crate) struct NewtonOutcome {
    pub u: Vec<f64>,
    pub lambda: f64,
    pub iterations: usize,
    pub stalled: bool,
}

fn preconditioner(p: &Problem, u: &[f64], lambda: f64) -> Band5Lu {
    let d: Vec<f64> = u.iter().map(|v| lambda.max(0.0) + 3.0 * p.quartic * v * v).collect();
    p.factor_shifted(1.0, &d).expect("shifted stiffness is positive definite")
}

/// Residual vector of the constrained problem and its relative EL size.
fn constrained_residual(p: &Problem, u: &[f64], lambda: f64, rho: f64) -> (Vec<f64>, f64) {
    let phi = p.potential(u);
    let mut f = p.residual(u, &phi, lambda);
    let rel = f.iter().fold(0.0f64, |m, v| m.max(v.abs())) / p.residual_scale(u, &phi, lambda);
    let mass: f64 = p.w_dot(u, u);
    f.push((mass - rho * rho) / (2.0 * rho));
    (f, rel)
}

/// Newton on `Lu + λu + κu³ − Φu = 0`, `Σwu² = ρ²`.
pub(crate) fn newton_constrained(
    p: &Problem,
    mut u: Vec<f64>,
    mut lambda: f64,
    rho: f64,
    max_iters: usize,
) -> NewtonOutcome {
    let n = p.n();
    let (mut f, mut rel) = constrained_residual(p, &u, lambda, rho);
    let mut stalled = false;
    let mut it = 0;
    while it < max_iters && rel > FLOOR {
        it += 1;
        let phi = p.potential(&u);
        let lu = preconditioner(p, &u, lambda);
        let wu: Vec<f64> = u.iter().zip(&p.w).map(|(a, w)| a * w / rho).collect();
        // Border elimination: y = P⁻¹r₁ − μ P⁻¹u with μ fixing the last row.
        let pinv_u = solve_l(p, &lu, &u);
        let schur: f64 = wu.iter().zip(&pinv_u).map(|(a, b)| a * b).sum();
        let precond = |r: &[f64], out: &mut [f64]| {
            let y0 = solve_l(p, &lu, &r[..n]);
            let s: f64 = wu.iter().zip(&y0).map(|(a, b)| a * b).sum();
            let mu = (s - r[n]) / schur;
            for i in 0..n {
                out[i] = y0[i] - mu * pinv_u[i];
            }
            out[n] = mu;
        };
        let apply = |x: &[f64], out: &mut [f64]| {
            p.jacobian_apply(&u, &phi, lambda, &x[..n], &mut out[..n]);
            for i in 0..n {
                out[i] += u[i] * x[n];
            }
            out[n] = wu.iter().zip(&x[..n]).map(|(a, b)| a * b).sum();
        };
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let mut step = vec![0.0; n + 1];
        let lin = gmres(&apply, &precond, &rhs, &mut step, 1e-10, GMRES_RESTART, GMRES_MAX);
        if !(lin.relative_residual < 0.5) {
            stalled = true;
            break;
        }
        // Retract onto the sphere and judge the step by the relative residual.
        let mut s = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let mut trial: Vec<f64> = u.iter().zip(&step).map(|(a, d)| a + s * d).collect();
            let m = p.w_dot(&trial, &trial).sqrt();
            trial.iter_mut().for_each(|v| *v *= rho / m);
            let tl = lambda + s * step[n];
            let (tf, trel) = constrained_residual(p, &trial, tl, rho);
            if trel < (1.0 - 1e-4 * s) * rel {
                u = trial;
                lambda = tl;
                f = tf;
                rel = trel;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if !accepted {
            stalled = true;
            break;
        }
    }
    NewtonOutcome { u, lambda, iterations: it, stalled }
}

/// Newton on `Lu + λu + κu³ − Φu = 0` with `λ` fixed.
pub(crate) fn newton_fixed(p: &Problem, mut u: Vec<f64>, lambda: f64, max_iters: usize) -> NewtonOutcome {
    let residual = |u: &[f64]| {
        let phi = p.potential(u);
        let f = p.residual(u, &phi, lambda);
        let rel = f.iter().fold(0.0f64, |m, v| m.max(v.abs())) / p.residual_scale(u, &phi, lambda);
        (f, rel)
    };
    let (mut f, mut rel) = residual(&u);
    let mut stalled = false;
    let mut it = 0;
    while it < max_iters && rel > FLOOR {
        it += 1;
        let phi = p.potential(&u);
        let lu = preconditioner(p, &u, lambda);
        let precond = |r: &[f64], out: &mut [f64]| out.copy_from_slice(&solve_l(p, &lu, r));
        let apply = |x: &[f64], out: &mut [f64]| p.jacobian_apply(&u, &phi, lambda, x, out);
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let mut step = vec![0.0; u.len()];
        let lin = gmres(&apply, &precond, &rhs, &mut step, 1e-10, GMRES_RESTART, GMRES_MAX);
        if !(lin.relative_residual < 0.5) {
            stalled = true;
            break;
        }
        let mut s = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial: Vec<f64> = u.iter().zip(&step).map(|(a, d)| a + s * d).collect();
            let (tf, trel) = residual(&trial);
            if trel < (1.0 - 1e-4 * s) * rel {
                u = trial;
                f = tf;
                rel = trel;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if !accepted {
            stalled = true;
            break;
        }
    }
    NewtonOutcome { u, lambda, iterations: it, stalled }
}

/// `(L + D)⁻¹ r = (K + WD)⁻¹ W r`.
fn solve_l(p: &Problem, lu: &Band5Lu, r: &[f64]) -> Vec<f64> {
    let mut x: Vec<f64> = r.iter().zip(&p.w).map(|(a, w)| a * w).collect();
    lu.solve_in_place(&mut x);
    x
}
