use crate::error::{RadialError, Result};

/// Riesz order `α` and mass parameter `ρ` (the constraint is `|u|₂ = ρ`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GppParams {
    alpha: f64,
    rho: f64,
}

impl GppParams {
    pub fn new(alpha: f64, rho: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 3.0) {
            return Err(RadialError::InvalidArgument(format!("Riesz order must lie in (0,3), got {alpha}")));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(RadialError::InvalidArgument(format!("mass parameter must be positive, got {rho}")));
        }
        Ok(Self { alpha, rho })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(self.alpha, rho)
    }
}
