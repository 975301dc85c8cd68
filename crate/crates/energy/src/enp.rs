use crate::error::{EnergyError, Result};

/// Energy level, multiplier and interaction energy determined by `(A, B, ρ)`
/// through the energy, Nehari and Pohozaev relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnpSolution {
    pub mu: f64,
    pub lambda: f64,
    pub c: f64,
}

/// Solves
/// `μ = ½A + ¼B − ¼C`, `A + λρ² + B − C = 0`,
/// `½A + (3/2)λρ² + (3/4)B − ((3+α)/4)C = 0` for `(μ, λ, C)`.
pub fn solve_enp_system(a: f64, b: f64, rho: f64, alpha: f64) -> Result<EnpSolution> {
    if alpha == 3.0 {
        return Err(EnergyError::InvalidArgument("the system is singular at α = 3".into()));
    }
    if !(rho > 0.0) {
        return Err(EnergyError::InvalidArgument(format!("mass parameter must be positive, got {rho}")));
    }
    let d = 3.0 - alpha;
    let mu = (2.0 * (1.0 - alpha) * a - alpha * b) / (4.0 * d);
    let lambda = ((1.0 + alpha) * a + alpha * b) / (d * rho * rho);
    let c = (4.0 * a + 3.0 * b) / d;
    Ok(EnpSolution { mu, lambda, c })
}

/// The three rows of the system evaluated at `(A, B, C, λ, μ)`; all vanish at a solution.
pub fn enp_rows(a: f64, b: f64, c: f64, lambda: f64, mu: f64, rho: f64, alpha: f64) -> [f64; 3] {
    let lr = lambda * rho * rho;
    [0.5 * a + 0.25 * b - 0.25 * c - mu, a + lr + b - c, 0.5 * a + 1.5 * lr + 0.75 * b - 0.25 * (3.0 + alpha) * c]
}

/// `φ''(1)` rewritten through `(λρ², μ)`: `(1−α)λρ²/2 − (7−α)μ`.
pub fn fiber_curvature_from_enp(lambda: f64, mu: f64, rho: f64, alpha: f64) -> f64 {
    0.5 * (1.0 - alpha) * lambda * rho * rho - (7.0 - alpha) * mu
}
