//! Mass-preserving dilations and the amplitude/length rescalings that map
//! states onto their limit problems.

use std::sync::Arc;

use crate::error::{RadialError, Result};
use crate::field::RadialField;
use crate::grid::RadialGrid;
use crate::interp::MonotoneCubic;
use crate::params::GppParams;

/// Mass fraction that may be discarded by [`dilate`] before it refuses.
pub const DILATION_LOSS_TOL: f64 = 1e-8;

/// `t^{3/2} u(t·r)` interpolated back onto the grid of `u`.
///
/// For `t < 1` the part of `u` beyond `t·r_max` has no image on the grid; if
/// it carries more than [`DILATION_LOSS_TOL`] of the mass the call fails.
pub fn dilate(u: &RadialField, t: f64) -> Result<RadialField> {
    if !(t.is_finite() && t > 0.0) {
        return Err(RadialError::InvalidArgument(format!("dilation factor must be positive, got {t}")));
    }
    if t < 1.0 {
        let cut = t * u.grid().r_max();
        let total = u.mass();
        let beyond: f64 = u
            .grid()
            .nodes()
            .iter()
            .zip(u.grid().weights())
            .zip(u.values())
            .filter(|((r, _), _)| **r > cut)
            .map(|((_, w), v)| w * v * v)
            .sum();
        if total > 0.0 && beyond > DILATION_LOSS_TOL * total {
            return Err(RadialError::TruncatedSupport { t, lost: beyond / total });
        }
    }
    Ok(dilate_lossy(u, t))
}

/// As [`dilate`] without the truncation check.
pub fn dilate_lossy(u: &RadialField, t: f64) -> RadialField {
    if t == 1.0 {
        return u.clone();
    }
    let p = MonotoneCubic::new(u);
    let amp = t.powf(1.5);
    let values = u.grid().nodes().iter().map(|&r| amp * p.eval(t * r)).collect();
    u.with_values(values).expect("interpolant of finite data is finite")
}

/// Which limit problem a state is mapped onto.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RescaleKind {
    /// `α > 1`, `ρ → 0`: Choquard profile of unit mass.
    ChoquardSmallMass,
    /// `α < 1`, `ρ → ∞`: Choquard profile of unit mass.
    ChoquardLargeMass,
    /// `ρ → ∞`: Thomas–Fermi profile `u/ρ` of unit mass.
    ThomasFermi,
    /// Frequency normalisation `λ^{-3/4} u(λ^{-1/2}x)`; keeps the mass.
    Frequency { lambda: f64 },
}

/// The map `u ↦ a·u(b·x)`.
///
/// Applied to a field it acts exactly by relabelling the grid: the new grid
/// has the same cell count and radius `r_max/b`, and the values are
/// multiplied by `a`. No interpolation is involved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleMap {
    pub amplitude: f64,
    pub length: f64,
}

impl ScaleMap {
    pub fn for_kind(params: GppParams, kind: RescaleKind) -> Result<Self> {
        let (alpha, rho) = (params.alpha(), params.rho());
        match kind {
            RescaleKind::ChoquardSmallMass | RescaleKind::ChoquardLargeMass => {
                if alpha == 1.0 {
                    return Err(RadialError::InvalidArgument("Choquard mass rescaling is degenerate at α = 1".into()));
                }
                Ok(Self { amplitude: rho.powf(-(alpha + 2.0) / (alpha - 1.0)), length: rho.powf(-2.0 / (alpha - 1.0)) })
            }
            RescaleKind::ThomasFermi => Ok(Self { amplitude: 1.0 / rho, length: 1.0 }),
            RescaleKind::Frequency { lambda } => {
                if !(lambda.is_finite() && lambda > 0.0) {
                    return Err(RadialError::InvalidArgument(format!(
                        "frequency rescaling needs a positive multiplier, got {lambda}"
                    )));
                }
                Ok(Self { amplitude: lambda.powf(-0.75), length: lambda.powf(-0.5) })
            }
        }
    }

    pub fn inverse(&self) -> Self {
        Self { amplitude: 1.0 / self.amplitude, length: 1.0 / self.length }
    }

    /// Grid on which the image of a field sampled on `grid` lives.
    pub fn image_grid(&self, grid: &RadialGrid) -> Result<RadialGrid> {
        grid.scaled(1.0 / self.length)
    }

    pub fn apply(&self, u: &RadialField) -> Result<RadialField> {
        let grid = Arc::new(self.image_grid(u.grid())?);
        RadialField::new(grid, u.values().iter().map(|v| self.amplitude * v).collect())
    }
}

/// Applies one of the limit rescalings; see [`RescaleKind`].
pub fn rescale_family(u: &RadialField, params: GppParams, kind: RescaleKind) -> Result<RadialField> {
    ScaleMap::for_kind(params, kind)?.apply(u)
}
