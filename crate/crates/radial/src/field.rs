use std::sync::Arc;

use crate::error::{RadialError, Result};
use crate::grid::RadialGrid;
use crate::laplacian;

/// Samples of a radial function at the nodes of a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialField {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
}

impl RadialField {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(RadialError::InvalidArgument(format!(
                "field has {} values for a grid of {} cells",
                values.len(),
                grid.n()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(RadialError::NonFinite(i));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let n = grid.n();
        Self { grid, values: vec![0.0; n] }
    }

    /// Samples `f` at the nodes. Non-finite samples are rejected.
    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.grid.clone(), values)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|v| c * v).collect() }
    }

    pub fn ensure_same_grid(&self, other: &RadialField) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(RadialError::GridMismatch)
        }
    }

    /// `|u|₂²`.
    pub fn mass(&self) -> f64 {
        self.grid.weights().iter().zip(&self.values).map(|(w, v)| w * v * v).sum()
    }

    /// `|u|₂`.
    pub fn l2_norm(&self) -> f64 {
        self.mass().sqrt()
    }

    /// `|u|₄⁴` (the fourth power, not the root).
    pub fn l4_norm4(&self) -> f64 {
        self.grid.weights().iter().zip(&self.values).map(|(w, v)| w * (v * v) * (v * v)).sum()
    }

    /// `|u|_p`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let s: f64 = self.grid.weights().iter().zip(&self.values).map(|(w, v)| w * v.abs().powf(p)).sum();
        s.powf(1.0 / p)
    }

    /// `|∇u|₂²` from the fourth-order stencil in `v = r·u` (see [`laplacian`]).
    pub fn dirichlet_energy(&self) -> f64 {
        laplacian::dirichlet_form(&self.grid, &self.values)
    }

    /// Discrete `−Δu`.
    pub fn neg_laplacian(&self) -> Vec<f64> {
        laplacian::neg_laplacian(&self.grid, &self.values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `(ρ/|u|₂)·u`.
    pub fn project_mass(&self, rho: f64) -> Result<Self> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(RadialError::InvalidArgument(format!("mass parameter must be positive, got {rho}")));
        }
        let norm = self.l2_norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(RadialError::DegenerateField);
        }
        Ok(self.scaled(rho / norm))
    }

    /// `∫ u·v` on a shared grid.
    pub fn inner(&self, other: &RadialField) -> Result<f64> {
        self.ensure_same_grid(other)?;
        Ok(self.grid.weights().iter().zip(&self.values).zip(&other.values).map(|((w, a), b)| w * a * b).sum())
    }

    /// Smallest node radius whose enclosed mass reaches `fraction` of the total.
    pub fn mass_radius(&self, fraction: f64) -> f64 {
        let total = self.mass();
        let target = fraction * total;
        let mut acc = 0.0;
        for ((r, w), v) in self.grid.nodes().iter().zip(self.grid.weights()).zip(&self.values) {
            acc += w * v * v;
            if acc >= target {
                return *r;
            }
        }
        self.grid.r_max()
    }

    /// True when every value is non-negative and values never increase outward
    /// by more than `slack` (absolute).
    pub fn is_nonincreasing(&self, slack: f64) -> bool {
        self.values.windows(2).all(|p| p[1] <= p[0] + slack)
    }
}
