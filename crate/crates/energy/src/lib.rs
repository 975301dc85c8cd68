//! Functionals of the Gross–Pitaevskii–Poisson problem and the algebra
//! relating them at critical points.
//!
//! Everything is expressed through `A = |∇u|₂²`, `B = |u|₄⁴`, `C = 𝒟(u)` and
//! `ρ² = |u|₂²`; see [`EnergyReport`].

pub mod bounds;
pub mod enp;
pub mod error;
pub mod fiber;
pub mod report;
pub mod residual;
pub mod thresholds;

pub use bounds::{gn_quotient, interpolation_bounds, InequalityCheck};
pub use enp::{enp_rows, fiber_curvature_from_enp, solve_enp_system, EnpSolution};
pub use error::{EnergyError, Result};
pub use fiber::{fiber_from_parts, fiber_profile, FiberProfile};
pub use report::{evaluate, EnergyReport};
pub use residual::{
    euler_lagrange_residual, euler_lagrange_residual_with, identity_residuals_with, identity_rows, IdentityResiduals,
};
pub use thresholds::{barrier, fiber_min_law, g2, k_alpha, threshold_constants, Barrier, ThresholdConstants};
