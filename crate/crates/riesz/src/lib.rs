//! Riesz potentials `I_α ∗ f` of radial densities and the interaction energy
//! `𝒟(u) = ∫(I_α ∗ u²)u²`.

pub mod constants;
pub mod gauss;
pub mod kernel_fn;
pub mod matrix;

use std::sync::Arc;

use gpp_radial::{RadialField, RadialGrid};
use rayon::prelude::*;
use thiserror::Error;

pub use constants::{riesz_normalization, sobolev_bound, RieszConstants};
pub use kernel_fn::reduced_kernel;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RieszError {
    #[error("Riesz order must lie in (0,3), got {0}")]
    InvalidOrder(f64),
    #[error("field and kernel live on different grids")]
    GridMismatch,
}

pub type Result<T> = std::result::Result<T, RieszError>;

/// Discrete Riesz potential on a fixed grid.
///
/// `Φ_i = Σ_j M_ij f_j ≈ (I_α ∗ f)(r_i)`. The matrix is shared between all
/// grids with the same cell count and rescaled by `h^α`.
#[derive(Debug, Clone)]
pub struct RieszKernel {
    alpha: f64,
    grid: Arc<RadialGrid>,
    unit: Arc<Vec<f64>>,
    scale: f64,
}

/// Builds (or fetches from the process-wide cache) the kernel for `alpha` on `grid`.
pub fn build_kernel(alpha: f64, grid: Arc<RadialGrid>) -> Result<RieszKernel> {
    if !(alpha > 0.0 && alpha < 3.0) {
        return Err(RieszError::InvalidOrder(alpha));
    }
    let unit = matrix::cached_unit(alpha, grid.n());
    let scale = grid.h().powf(alpha);
    Ok(RieszKernel { alpha, grid, unit, scale })
}

impl RieszKernel {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    /// Same order on another grid with the same cell count (no reassembly).
    pub fn on_grid(&self, grid: Arc<RadialGrid>) -> RieszKernel {
        if grid.n() == self.grid.n() {
            let scale = grid.h().powf(self.alpha);
            RieszKernel { alpha: self.alpha, grid, unit: self.unit.clone(), scale }
        } else {
            build_kernel(self.alpha, grid).expect("order already validated")
        }
    }

    /// Matrix entry `M_ij`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.scale * self.unit[i * self.grid.n() + j]
    }

    /// Row `i` of the unscaled matrix; multiply by [`Self::scale`].
    pub fn unit_row(&self, i: usize) -> &[f64] {
        let n = self.grid.n();
        &self.unit[i * n..(i + 1) * n]
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `Φ = M f` on raw slices.
    pub fn apply_slice(&self, f: &[f64], out: &mut [f64]) {
        let n = self.grid.n();
        assert_eq!(f.len(), n);
        let s = self.scale;
        out.par_iter_mut().enumerate().for_each(|(i, o)| {
            let row = &self.unit[i * n..(i + 1) * n];
            *o = s * row.iter().zip(f).map(|(a, b)| a * b).sum::<f64>();
        });
    }

    fn check(&self, f: &RadialField) -> Result<()> {
        if Arc::ptr_eq(f.grid(), &self.grid) || f.grid().same_as(&self.grid) {
            Ok(())
        } else {
            Err(RieszError::GridMismatch)
        }
    }

    /// `I_α ∗ f` at the nodes.
    pub fn apply_potential(&self, f: &RadialField) -> Result<RadialField> {
        self.check(f)?;
        let mut out = vec![0.0; self.grid.n()];
        self.apply_slice(f.values(), &mut out);
        Ok(RadialField::new(self.grid.clone(), out).expect("finite potential"))
    }

    /// `∫ (I_α ∗ f) g`.
    pub fn bilinear(&self, f: &RadialField, g: &RadialField) -> Result<f64> {
        self.check(f)?;
        self.check(g)?;
        let phi = self.apply_potential(f)?;
        Ok(self.grid.integrate(&phi.values().iter().zip(g.values()).map(|(a, b)| a * b).collect::<Vec<_>>()))
    }

    /// `𝒟(u) = ∫ (I_α ∗ u²) u²`.
    pub fn interaction_energy(&self, u: &RadialField) -> Result<f64> {
        self.check(u)?;
        let sq: Vec<f64> = u.values().iter().map(|v| v * v).collect();
        let mut phi = vec![0.0; sq.len()];
        self.apply_slice(&sq, &mut phi);
        Ok(self.grid.weights().iter().zip(&sq).zip(&phi).map(|((w, a), b)| w * a * b).sum())
    }
}

/// Closed-form constants for order `alpha`.
pub fn constants(alpha: f64) -> RieszConstants {
    RieszConstants::new(alpha)
}
