use serde::{Deserialize, Serialize};

use crate::curve::BranchCurve;

/// Relative slack of the concavity test.
pub const CONCAVITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ShapeReport {
    /// Masses at which `m` failed to decrease.
    pub monotone_violations: Vec<f64>,
    /// Masses at which the second difference exceeded the slack.
    pub concavity_violations: Vec<f64>,
    /// Number of rows examined.
    pub rows: usize,
}

impl ShapeReport {
    pub fn ok(&self) -> bool {
        self.monotone_violations.is_empty() && self.concavity_violations.is_empty()
    }
}

/// Checks that the energy is strictly decreasing and concave over the
/// converged rows of negative energy.
///
/// On a non-uniform mass grid the second difference is the divided
/// difference scaled by the square of the mean spacing, so it reduces to
/// `m_{i+1} − 2m_i + m_{i−1}` on a uniform one.
pub fn check_shape(curve: &BranchCurve) -> ShapeReport {
    let pts: Vec<(f64, f64)> = curve.converged_rows().filter(|r| r.m < 0.0).map(|r| (r.rho, r.m)).collect();
    let mut report = ShapeReport { rows: pts.len(), ..Default::default() };
    for p in pts.windows(2) {
        if !(p[1].1 < p[0].1) {
            report.monotone_violations.push(p[1].0);
        }
    }
    for p in pts.windows(3) {
        let (h1, h2) = (p[1].0 - p[0].0, p[2].0 - p[1].0);
        let d2 = 2.0 * ((p[2].1 - p[1].1) / h2 - (p[1].1 - p[0].1) / h1) / (h1 + h2);
        let scaled = d2 * (0.5 * (h1 + h2)).powi(2);
        if scaled > CONCAVITY_TOL * p[1].1.abs() {
            report.concavity_violations.push(p[1].0);
        }
    }
    report
}
