use std::f64::consts::PI;

use crate::error::{RadialError, Result};

/// Smallest admissible number of cells.
pub const MIN_CELLS: usize = 8;

/// Uniform cell-centred grid on `(0, r_max]` with quadrature weights for
/// `∫ f(r) 4πr² dr`.
///
/// Nodes sit at `r_i = (i + ½)h`. The weights are the midpoint rule
/// `4π r_i² h`, except that the outermost cell carries the Euler–Maclaurin
/// remainder `π h² r_max / 3`, which makes the rule exact for the constant
/// function. Fields are assumed negligible near `r_max`, so the extra term
/// does not affect the accuracy for decaying integrands.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    n: usize,
    r_max: f64,
    h: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialGrid {
    pub fn new(n: usize, r_max: f64) -> Result<Self> {
        if n < MIN_CELLS {
            return Err(RadialError::InvalidArgument(format!("grid needs at least {MIN_CELLS} cells, got {n}")));
        }
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(RadialError::InvalidArgument(format!("grid radius must be positive and finite, got {r_max}")));
        }
        let h = r_max / n as f64;
        let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
        let mut weights: Vec<f64> = nodes.iter().map(|r| 4.0 * PI * r * r * h).collect();
        weights[n - 1] += PI * h * h * r_max / 3.0;
        Ok(Self { n, r_max, h, nodes, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Cell width.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Same cell count, radius multiplied by `factor`. Every discrete operator
    /// built on the grid transforms exactly under this map.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.n, self.r_max * factor)
    }

    /// Two grids are interchangeable when they have the same cell count and radius.
    pub fn same_as(&self, other: &RadialGrid) -> bool {
        self.n == other.n && self.r_max.to_bits() == other.r_max.to_bits()
    }

    /// `∫ f 4πr² dr` for nodal samples `f`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.n);
        self.weights.iter().zip(f).map(|(w, v)| w * v).sum()
    }

    /// `∫ f(r) 4πr² dr` for a closure sampled at the nodes.
    pub fn integrate_fn(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, w)| w * f(r)).sum()
    }

    /// Index of the cell containing radius `r`, clamped to the grid.
    pub fn cell_of(&self, r: f64) -> usize {
        ((r / self.h).floor().max(0.0) as usize).min(self.n - 1)
    }
}
