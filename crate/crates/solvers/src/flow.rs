//! Energy-diminishing normalised gradient flow.
//!
//! Each step solves `(1/τ + L + κu² − Φ + c) ũ = u` with the nonlinear
//! coefficients lagged and `c = max(Φ − κu²)₊` keeping the banded matrix
//! positive definite, then takes `|ũ|` and restores the mass. Steps that
//! raise the energy are retried with a smaller `τ`.

use crate::problem::{Eval, Problem};

const TAU_MAX: f64 = 1e8;
const TAU_MIN: f64 = 1e-12;

#[derive(Debug, Clone)]
pub(crate) struct FlowOutcome {
    pub u: Vec<f64>,
    pub eval: Eval,
    pub lambda: f64,
    pub iterations: usize,
    /// Energy after every accepted step, starting with the initial one.
    pub energies: Vec<f64>,
}

pub(crate) fn normalize(p: &Problem, u: &mut [f64], rho: f64) {
    let m = p.w_dot(u, u).sqrt();
    if m > 0.0 {
        let s = rho / m;
        u.iter_mut().for_each(|v| *v = s * v.abs());
    }
}

pub(crate) fn relative_residual(p: &Problem, u: &[f64], e: &Eval) -> (f64, f64) {
    let lambda = e.nehari_lambda(p.quartic);
    let r = p.residual(u, &e.phi, lambda);
    let sup = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (lambda, sup / p.residual_scale(u, &e.phi, lambda))
}

pub(crate) fn normalized_flow(
    p: &Problem,
    mut u: Vec<f64>,
    rho: f64,
    dt: f64,
    max_iters: usize,
    tol: f64,
) -> FlowOutcome {
    normalize(p, &mut u, rho);
    let mut eval = p.eval(&u);
    let mut energy = eval.energy(p.quartic);
    let (mut lambda, mut rel) = relative_residual(p, &u, &eval);
    let mut tau = dt;
    let mut it = 0;
    let mut energies = vec![energy];
    while it < max_iters && rel > tol && tau > TAU_MIN {
        it += 1;
        let c = u.iter().zip(&eval.phi).map(|(v, f)| f - p.quartic * v * v).fold(0.0f64, f64::max);
        loop {
            let d: Vec<f64> = u.iter().zip(&eval.phi).map(|(v, f)| 1.0 / tau + p.quartic * v * v - f + c).collect();
            let next = p.factor_shifted(1.0, &d).map(|lu| {
                let mut x: Vec<f64> = u.iter().zip(&p.w).map(|(a, w)| a * w).collect();
                lu.solve_in_place(&mut x);
                normalize(p, &mut x, rho);
                x
            });
            if let Some(cand) = next.filter(|x| x.iter().all(|v| v.is_finite())) {
                let ce = p.eval(&cand);
                let cen = ce.energy(p.quartic);
                if cen <= energy + 1e-14 * energy.abs() {
                    u = cand;
                    eval = ce;
                    energy = cen;
                    energies.push(cen);
                    tau = (tau * 2.0).min(TAU_MAX);
                    break;
                }
            }
            tau *= 0.25;
            if tau <= TAU_MIN {
                break;
            }
        }
        (lambda, rel) = relative_residual(p, &u, &eval);
    }
    FlowOutcome { u, eval, lambda, iterations: it, energies }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gpp_radial::build_grid;
    use gpp_riesz::build_kernel;

    #[test]
    fn accepted_steps_never_raise_the_energy() {
        let grid = build_grid(256, 40.0).unwrap();
        let kernel = build_kernel(2.0, grid.clone()).unwrap();
        let p = Problem::new(&kernel, 1.0);
        let u0: Vec<f64> = grid.nodes().iter().map(|r| (-r * r / 8.0).exp()).collect();
        let out = normalized_flow(&p, u0, 4.0, 1.0, 200, 1e-8);
        assert!(out.energies.len() > 5);
        for pair in out.energies.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-14 * pair[0].abs(), "{pair:?}");
        }
        assert!((p.w_dot(&out.u, &out.u) - 16.0).abs() < 1e-12);
        assert!(out.u.iter().all(|v| *v >= 0.0));
    }
}
