use gpp_radial::RadialField;
use gpp_riesz::RieszKernel;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::report::EnergyReport;

/// `−Δu + λu + κu³ − (I_α ∗ u²)u` at the nodes, with quartic weight `κ`.
pub fn euler_lagrange_residual_with(
    u: &RadialField,
    lambda: f64,
    quartic: f64,
    kernel: &RieszKernel,
) -> Result<RadialField> {
    let sq = u.with_values(u.values().iter().map(|v| v * v).collect())?;
    let phi = kernel.apply_potential(&sq)?;
    let lap = u.neg_laplacian();
    let values = u
        .values()
        .iter()
        .zip(&lap)
        .zip(phi.values())
        .map(|((v, l), p)| l + lambda * v + quartic * v * v * v - p * v)
        .collect();
    Ok(u.with_values(values)?)
}

/// `−Δu + λu + u³ − (I_α ∗ u²)u` at the nodes.
pub fn euler_lagrange_residual(u: &RadialField, lambda: f64, kernel: &RieszKernel) -> Result<RadialField> {
    euler_lagrange_residual_with(u, lambda, 1.0, kernel)
}

/// Relative residuals of the Nehari and Pohozaev identities and of the
/// Euler–Lagrange equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResiduals {
    pub nehari: f64,
    pub pohozaev: f64,
    pub euler_lagrange_sup: f64,
}

/// Nehari `A + λρ² + κB − C` and Pohozaev `½A + (3/2)λρ² + (3/4)κB − ((3+α)/4)C`,
/// both divided by `max(A, κB, C, |λ|ρ²)`.
pub fn identity_rows(report: &EnergyReport, lambda: f64, alpha: f64, quartic: f64) -> (f64, f64) {
    let (a, b, c) = (report.a, quartic * report.b, report.c);
    let lr = lambda * report.rho2;
    let scale = a.max(b).max(c).max(lr.abs());
    if scale == 0.0 {
        return (0.0, 0.0);
    }
    let nehari = a + lr + b - c;
    let pohozaev = 0.5 * a + 1.5 * lr + 0.75 * b - 0.25 * (3.0 + alpha) * c;
    (nehari / scale, pohozaev / scale)
}

/// Full residual set for a candidate state.
pub fn identity_residuals_with(
    u: &RadialField,
    lambda: f64,
    quartic: f64,
    kernel: &RieszKernel,
    report: &EnergyReport,
) -> Result<IdentityResiduals> {
    let (nehari, pohozaev) = identity_rows(report, lambda, kernel.alpha(), quartic);
    let res = euler_lagrange_residual_with(u, lambda, quartic, kernel)?;
    let sq = u.with_values(u.values().iter().map(|v| v * v).collect())?;
    let phi = kernel.apply_potential(&sq)?;
    let lap = u.neg_laplacian();
    let sup = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = sup(&mut lap.iter().copied())
        + lambda.abs() * u.max_abs()
        + quartic * u.max_abs().powi(3)
        + sup(&mut phi.values().iter().zip(u.values()).map(|(p, v)| p * v));
    let el = if scale > 0.0 { res.max_abs() / scale } else { 0.0 };
    Ok(IdentityResiduals { nehari, pohozaev, euler_lagrange_sup: el })
}
