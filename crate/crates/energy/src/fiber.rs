//! The energy along the mass-preserving dilations `t ↦ t^{3/2}u(t·)`:
//! `φ(t) = (A/2)t² + (B/4)t³ − (C/4)t^{3−α}`.

use serde::{Deserialize, Serialize};

use crate::error::{EnergyError, Result};
use crate::report::EnergyReport;

/// Fiber coefficients and critical points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberProfile {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    /// Local maximum, if the fiber has one.
    pub t_max: Option<f64>,
    /// Local minimum (beyond `t_max` when both exist).
    pub t_min: Option<f64>,
}

const BISECT_RTOL: f64 = 1e-12;

impl FiberProfile {
    pub fn phi_at(&self, t: f64) -> f64 {
        0.5 * self.a * t * t + 0.25 * self.b * t.powi(3) - 0.25 * self.c * t.powf(3.0 - self.alpha)
    }

    pub fn dphi_at(&self, t: f64) -> f64 {
        t * self.psi(t)
    }

    pub fn d2phi_at(&self, t: f64) -> f64 {
        let al = self.alpha;
        self.a + 1.5 * self.b * t - 0.25 * (3.0 - al) * (2.0 - al) * self.c * t.powf(1.0 - al)
    }

    /// `φ'(t)/t = A + ¾Bt − ((3−α)/4)C t^{1−α}`.
    pub fn psi(&self, t: f64) -> f64 {
        self.a + 0.75 * self.b * t - 0.25 * (3.0 - self.alpha) * self.c * t.powf(1.0 - self.alpha)
    }

    fn dpsi(&self, t: f64) -> f64 {
        let al = self.alpha;
        0.75 * self.b - 0.25 * (3.0 - al) * (1.0 - al) * self.c * t.powf(-al)
    }

    /// Lower end of the bracket for the local maximum when `α < 1`:
    /// the root of `ψ` with `B` dropped.
    pub fn choquard_root(&self) -> f64 {
        (4.0 * self.a / ((3.0 - self.alpha) * self.c)).powf(1.0 / (1.0 - self.alpha))
    }

    /// Bisection to a relative width of 1e-12 followed by one Newton step.
    fn root(&self, mut lo: f64, mut hi: f64) -> f64 {
        let increasing = self.psi(lo) < 0.0;
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if (self.psi(mid) < 0.0) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= BISECT_RTOL * hi {
                break;
            }
        }
        let t = 0.5 * (lo + hi);
        let d = self.dpsi(t);
        if d != 0.0 {
            let next = t - self.psi(t) / d;
            if next > lo && next < hi {
                return next;
            }
        }
        t
    }
}

/// Locates the critical points of the fiber through `report`.
pub fn fiber_profile(report: &EnergyReport, alpha: f64) -> Result<FiberProfile> {
    fiber_from_parts(report.a, report.b, report.c, alpha)
}

pub fn fiber_from_parts(a: f64, b: f64, c: f64, alpha: f64) -> Result<FiberProfile> {
    if !(a > 0.0) {
        return Err(EnergyError::InvalidArgument(format!("fiber needs A > 0, got {a}")));
    }
    if !(alpha > 0.0 && alpha < 3.0) {
        return Err(EnergyError::InvalidArgument(format!("Riesz order must lie in (0,3), got {alpha}")));
    }
    let mut p = FiberProfile { a, b, c, alpha, t_max: None, t_min: None };
    if c <= 0.0 {
        return Ok(p);
    }
    if alpha < 1.0 {
        let t0 = p.choquard_root();
        if b <= 0.0 {
            p.t_max = Some(t0);
            return Ok(p);
        }
        // ψ is convex with its minimum where ψ' = 0.
        let t_star = ((3.0 - alpha) * (1.0 - alpha) * c / (3.0 * b)).powf(1.0 / alpha);
        if p.psi(t_star) >= 0.0 {
            return Ok(p);
        }
        let upper = t0 * (1.0 / alpha).powf(1.0 / (1.0 - alpha));
        let hi = if upper < t_star && p.psi(upper) < 0.0 { upper } else { t_star };
        p.t_max = Some(p.root(t0, hi));
        let mut far = 2.0 * t_star;
        while p.psi(far) < 0.0 {
            far *= 2.0;
        }
        p.t_min = Some(p.root(t_star, far));
    } else if alpha == 1.0 {
        let slope = 0.75 * b;
        let offset = a - 0.5 * c;
        if offset < 0.0 && slope > 0.0 {
            p.t_min = Some(-offset / slope);
        }
    } else {
        // ψ increases from −∞: one root, a minimum.
        let mut lo = 1.0;
        while p.psi(lo) >= 0.0 {
            lo *= 0.5;
        }
        let mut hi = 1.0;
        while p.psi(hi) < 0.0 {
            hi *= 2.0;
            if hi > 1e300 {
                return Ok(p);
            }
        }
        p.t_min = Some(p.root(lo, hi));
    }
    Ok(p)
}
