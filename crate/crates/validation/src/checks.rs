use std::sync::Arc;

use gpp_branch::{check_shape, BranchCurve};
use gpp_energy::{enp_rows, evaluate, fiber_curvature_from_enp, fiber_min_law, interpolation_bounds, solve_enp_system};
use gpp_radial::{dilate, RadialField, RadialGrid};
use gpp_riesz::{constants, RieszKernel};
use gpp_solvers::SolveResult;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::Result;

/// One measured quantity against its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, pass: value <= tolerance }
    }

    /// Records a yes/no property; `value` is 1 on success.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), value: if ok { 1.0 } else { 0.0 }, tolerance: 1.0, pass: ok }
    }

    /// Counts violations; passes when there are none.
    pub fn violations(name: impl Into<String>, count: usize) -> Self {
        Self { name: name.into(), value: count as f64, tolerance: 0.0, pass: count == 0 }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Nehari, Pohozaev and Euler–Lagrange residuals, multiplier agreement,
/// positivity and monotonicity of a normalised state.
pub fn identity_checks(label: &str, r: &SolveResult, identity_tol: f64, lambda_tol: f64) -> Vec<Check> {
    let rho = r.rho();
    let enp = solve_enp_system(r.report.a, r.report.b, rho, r.alpha).map(|s| s.lambda).unwrap_or(f64::NAN);
    let nehari = r.report.nehari_lambda_with(r.kind.quartic());
    let scale = r.state.max_abs();
    vec![
        Check::holds(format!("{label}: converged"), r.converged),
        Check::at_most(format!("{label}: Nehari residual"), r.residuals.nehari.abs(), identity_tol),
        Check::at_most(format!("{label}: Pohozaev residual"), r.residuals.pohozaev.abs(), identity_tol),
        Check::at_most(format!("{label}: lambda flow vs ENP"), rel(r.lambda, enp), lambda_tol),
        Check::at_most(format!("{label}: lambda flow vs Nehari"), rel(r.lambda, nehari), lambda_tol),
        Check::holds(format!("{label}: lambda positive"), r.lambda > 0.0),
        Check::holds(format!("{label}: positive"), r.state.values().iter().all(|v| *v > 0.0)),
        Check::holds(format!("{label}: radially nonincreasing"), r.state.is_nonincreasing(1e-12 * scale)),
    ]
}

/// Smooth positive field built from a few random even bumps.
pub fn random_field(rng: &mut ChaCha8Rng, grid: &Arc<RadialGrid>) -> Result<RadialField> {
    let bumps: Vec<(f64, f64, f64)> =
        (0..3).map(|_| (rng.gen_range(0.1..1.0), rng.gen_range(0.0..3.0), rng.gen_range(0.4..1.5))).collect();
    Ok(RadialField::from_fn(grid.clone(), |r| {
        bumps.iter().map(|(a, c, s)| a * ((-((r - c) / s).powi(2)).exp() + (-((r + c) / s).powi(2)).exp())).sum()
    })?)
}

/// Scaling of mass, `A`, `B` and `C` under `u ↦ t^{3/2}u(t·)` for `t ∈ {1/2, 2}`,
/// interpolated back onto the same grid; worst relative defect per law.
pub fn dilation_checks(kernel: &RieszKernel, rng: &mut ChaCha8Rng, fields: usize, tol: f64) -> Result<Vec<Check>> {
    let alpha = kernel.alpha();
    let mut worst = [0.0f64; 4];
    for _ in 0..fields {
        let u = random_field(rng, kernel.grid())?;
        let ru = evaluate(&u, kernel)?;
        for t in [0.5f64, 2.0] {
            let rv = evaluate(&dilate(&u, t)?, kernel)?;
            let defects = [
                rel(rv.rho2, ru.rho2),
                rel(rv.a, t * t * ru.a),
                rel(rv.b, t.powi(3) * ru.b),
                rel(rv.c, t.powf(3.0 - alpha) * ru.c),
            ];
            for (w, d) in worst.iter_mut().zip(defects) {
                *w = w.max(d);
            }
        }
    }
    let names = ["mass invariant", "A ~ t^2", "B ~ t^3", "C ~ t^(3-alpha)"];
    Ok(names.iter().zip(worst).map(|(n, w)| Check::at_most(format!("dilation alpha={alpha}: {n}"), w, tol)).collect())
}

/// The three interpolation inequalities on random fields; counts violations.
pub fn inequality_checks(kernel: &RieszKernel, rng: &mut ChaCha8Rng, fields: usize) -> Result<Vec<Check>> {
    let alpha = kernel.alpha();
    let k = constants(alpha);
    let mut violations = [0usize; 3];
    for _ in 0..fields {
        let u = random_field(rng, kernel.grid())?;
        let report = evaluate(&u, kernel)?;
        for (v, c) in violations.iter_mut().zip(interpolation_bounds(&report, alpha, &k)) {
            if !c.holds() {
                *v += 1;
            }
        }
    }
    let names = ["Gagliardo-Nirenberg L4", "Hardy-Littlewood-Sobolev", "combined GN/HLS"];
    Ok(names.iter().zip(violations).map(|(n, v)| Check::violations(format!("{n} alpha={alpha}"), v)).collect())
}

/// `B(f,g) = B(g,f)` for the discrete Riesz form on random pairs; worst relative defect.
pub fn symmetry_check(kernel: &RieszKernel, rng: &mut ChaCha8Rng, pairs: usize, tol: f64) -> Result<Check> {
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (f, g) = (random_field(rng, kernel.grid())?, random_field(rng, kernel.grid())?);
        let (f2, g2) = (
            f.with_values(f.values().iter().map(|v| v * v).collect())?,
            g.with_values(g.values().iter().map(|v| v * v).collect())?,
        );
        let (a, b) = (kernel.bilinear(&f2, &g2)?, kernel.bilinear(&g2, &f2)?);
        worst = worst.max(rel(a, b));
    }
    Ok(Check::at_most(format!("Riesz form symmetry alpha={}", kernel.alpha()), worst, tol))
}

/// Closed forms tied to the fiber: the minimum law against a brute-force
/// scan, the curvature formula and the ENP system rows.
pub fn fiber_algebra_checks(alpha: f64, rng: &mut ChaCha8Rng, samples: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    if alpha > 0.0 && alpha < 1.0 {
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let (b, c) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
            let g = |t: f64| 0.75 * b * t - 0.25 * (3.0 - alpha) * c * t.powf(1.0 - alpha);
            let brute = brute_min(g);
            worst = worst.max(rel(brute, fiber_min_law(b, c, alpha)));
        }
        checks.push(Check::at_most(format!("fiber minimum law alpha={alpha}"), worst, 1e-8));
    }
    let (mut curv, mut rows) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let (a, b, rho) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0), rng.gen_range(0.2..5.0));
        let Ok(s) = solve_enp_system(a, b, rho, alpha) else { continue };
        let r = enp_rows(a, b, s.c, s.lambda, s.mu, rho, alpha);
        let size = a + b + s.c + (s.lambda * rho * rho).abs();
        rows = rows.max(r.iter().fold(0.0f64, |m, x| m.max(x.abs())) / size);
        let fiber = gpp_energy::fiber_from_parts(a, b, s.c, alpha).map(|p| p.d2phi_at(1.0));
        if let Ok(d2) = fiber {
            let formula = fiber_curvature_from_enp(s.lambda, s.mu, rho, alpha);
            curv = curv.max((d2 - formula).abs() / size);
        }
    }
    checks.push(Check::at_most(format!("fiber curvature formula alpha={alpha}"), curv, 1e-12));
    checks.push(Check::at_most(format!("ENP system rows alpha={alpha}"), rows, 1e-13));
    checks
}

/// Golden-section minimum of a unimodal function on a bracket found by doubling.
fn brute_min(g: impl Fn(f64) -> f64) -> f64 {
    let mut hi = 1.0;
    while g(hi) < g(hi / 2.0) {
        hi *= 2.0;
    }
    let (mut a, mut b) = (0.0f64, hi);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        let (x1, x2) = (b - phi * (b - a), a + phi * (b - a));
        if g(x1) < g(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    g(0.5 * (a + b))
}

/// Strict decrease and concavity of the energy along a branch.
pub fn shape_checks(label: &str, curve: &BranchCurve) -> Vec<Check> {
    let shape = check_shape(curve);
    vec![
        Check::violations(format!("{label}: monotone decrease"), shape.monotone_violations.len()),
        Check::violations(format!("{label}: concavity"), shape.concavity_violations.len()),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
    pub failed: usize,
}

impl VerifyReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        Self { checks, passed: failed == 0, failed }
    }
}
