//! Mass thresholds located by continuation and bisection.

use gpp_energy::{evaluate, fiber_from_parts, threshold_constants};
use gpp_radial::{GppParams, RadialField, ScaleMap};
use gpp_riesz::RieszKernel;
use gpp_solvers::{solve_choquard_frequency, SolveResult, SolverConfig};
use serde::{Deserialize, Serialize};

use crate::domain::{solve_minimizer, DomainPolicy, Functional};
use crate::error::{BranchError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdOptions {
    pub domain: DomainPolicy,
    /// First mass tried, in units of the lower bound `K̄_α` (`0 < α < 1`).
    pub anchor_factor: f64,
    /// Ratio between consecutive masses of the descending continuation.
    pub descent_step: f64,
    /// Bisection stops once the bracket is narrower than this fraction of its upper end.
    pub rel_tol: f64,
    /// Total number of solves allowed.
    pub max_solves: usize,
    /// Box radius for the frequency-normalised state at `α = 1`.
    pub frequency_box: f64,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self {
            domain: DomainPolicy::default(),
            anchor_factor: 2.0,
            descent_step: 0.97,
            rel_tol: 5e-3,
            max_solves: 120,
            frequency_box: 30.0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub alpha: f64,
    /// Smallest mass found with negative minimum energy.
    pub rho_star: Option<f64>,
    /// `|w★|₂` for `α = 1`.
    pub rho_star_critical: Option<f64>,
    /// Analytic lower bound `K̄_α` for the existence threshold, `0 < α < 1`.
    pub rho_doublestar_lower: Option<f64>,
    /// Smallest mass at which the local-minimum solve succeeds.
    pub rho_doublestar_empirical: Option<f64>,
    /// Final brackets `(no, yes)` of the two bisections.
    pub rho_star_bracket: Option<(f64, f64)>,
    pub rho_doublestar_bracket: Option<(f64, f64)>,
    pub solves: usize,
}

impl ThresholdReport {
    /// `ρ**_emp < ρ*` whenever both are known.
    pub fn ordering_holds(&self) -> Option<bool> {
        Some(self.rho_doublestar_empirical? < self.rho_star?)
    }
}

pub fn detect_thresholds(alpha: f64, cfg: &SolverConfig, opts: &ThresholdOptions) -> Result<ThresholdReport> {
    cfg.validate()?;
    opts.domain.validate()?;
    if !(opts.descent_step > 0.0 && opts.descent_step < 1.0 && opts.rel_tol > 0.0 && opts.anchor_factor > 0.0) {
        return Err(BranchError::InvalidArgument("threshold options out of range".into()));
    }
    if alpha > 0.0 && alpha < 1.0 {
        Subcritical::new(alpha, cfg, opts).run()
    } else if alpha == 1.0 {
        critical(cfg, opts)
    } else {
        Err(BranchError::InvalidArgument(format!("thresholds are defined for 0 < α ≤ 1, got {alpha}")))
    }
}

struct Probe {
    rho: f64,
    result: Option<SolveResult>,
}

impl Probe {
    fn ok(&self) -> bool {
        self.result.as_ref().is_some_and(|r| r.converged)
    }

    fn negative(&self) -> bool {
        self.result.as_ref().is_some_and(|r| r.converged && r.energy() < 0.0)
    }
}

struct Subcritical<'a> {
    alpha: f64,
    cfg: &'a SolverConfig,
    opts: &'a ThresholdOptions,
    solves: usize,
}

impl<'a> Subcritical<'a> {
    fn new(alpha: f64, cfg: &'a SolverConfig, opts: &'a ThresholdOptions) -> Self {
        Self { alpha, cfg, opts, solves: 0 }
    }

    fn probe(&mut self, rho: f64, warm: Option<&RadialField>) -> Result<Probe> {
        if self.solves >= self.opts.max_solves {
            return Err(BranchError::BisectionBudgetExhausted(format!("{} solves used", self.solves)));
        }
        self.solves += 1;
        let params = GppParams::new(self.alpha, rho)?;
        let result = solve_minimizer(Functional::Full, params, self.cfg, &self.opts.domain, warm).ok();
        Ok(Probe { rho, result })
    }

    fn state(p: &Probe) -> Option<&RadialField> {
        p.result.as_ref().map(|r| &r.state)
    }

    /// Continuation downwards from a negative-energy minimiser, then one
    /// bisection on solver success and one on the sign of the energy. Every
    /// trial is warm-started from the nearest successful state above it.
    fn run(mut self) -> Result<ThresholdReport> {
        let bar_k = threshold_constants(self.alpha)?.bar_k_alpha;
        let mut rho = self.opts.anchor_factor * bar_k;
        let mut anchor = self.probe(rho, None)?;
        while !anchor.negative() {
            rho *= 2.0;
            anchor = self.probe(rho, None)?;
        }
        // `last_neg`: smallest negative-energy mass; `last_ok`: smallest success.
        let mut last_neg = anchor;
        let mut first_pos: Option<f64> = None;
        let mut last_ok_rho = last_neg.rho;
        let mut last_ok_state = Self::state(&last_neg).cloned();
        let first_fail;
        loop {
            let next = self.probe(last_ok_rho * self.opts.descent_step, last_ok_state.as_ref())?;
            if !next.ok() {
                first_fail = next.rho;
                break;
            }
            last_ok_rho = next.rho;
            last_ok_state = Self::state(&next).cloned();
            if next.negative() {
                last_neg = next;
            } else if first_pos.is_none() {
                first_pos = Some(next.rho);
            }
        }

        let (mut no, mut yes) = (first_fail, last_ok_rho);
        while yes - no > self.opts.rel_tol * yes {
            let trial = self.probe(0.5 * (no + yes), last_ok_state.as_ref())?;
            if trial.ok() {
                yes = trial.rho;
                last_ok_state = Self::state(&trial).cloned();
            } else {
                no = trial.rho;
            }
        }
        let doublestar = (no, yes);

        // Sign bisection; without a positive-energy success the sign change
        // coincides with the loss of solutions.
        let (mut pos, mut neg) = (first_pos.unwrap_or(doublestar.1), last_neg.rho);
        let mut neg_state = Self::state(&last_neg).cloned();
        if first_pos.is_some() {
            while neg - pos > self.opts.rel_tol * neg {
                let trial = self.probe(0.5 * (pos + neg), neg_state.as_ref())?;
                if trial.negative() {
                    neg = trial.rho;
                    neg_state = Self::state(&trial).cloned();
                } else {
                    pos = trial.rho;
                }
            }
        }
        Ok(ThresholdReport {
            alpha: self.alpha,
            rho_star: Some(neg),
            rho_star_critical: None,
            rho_doublestar_lower: Some(bar_k),
            rho_doublestar_empirical: Some(doublestar.1),
            rho_star_bracket: Some((pos, neg)),
            rho_doublestar_bracket: Some(doublestar),
            solves: self.solves,
        })
    }
}

/// `s·w★` with `s = ρ/|w★|₂`, dilated to the minimum of its fiber.
///
/// Below the critical mass the fiber has no minimum; the seed is then dilated
/// by the same amount as its mirror image above the critical mass.
pub fn critical_seed(w_star: &RadialField, kernel: &RieszKernel, rho: f64) -> Result<RadialField> {
    let s = rho / w_star.l2_norm();
    let report = evaluate(w_star, kernel)?;
    let (a, b, c) = (s * s * report.a, s.powi(4) * report.b, s.powi(4) * report.c);
    let profile = fiber_from_parts(a, b, c, 1.0);
    let t = match profile.ok().and_then(|p| p.t_min) {
        Some(t) => t,
        None => (a - 0.5 * c).abs() / (0.75 * b),
    };
    if !(t.is_finite() && t > 0.0) {
        return Err(BranchError::InvalidArgument(format!("degenerate fiber at ρ = {rho}")));
    }
    Ok(ScaleMap { amplitude: s * t.powf(1.5), length: t }.apply(w_star)?)
}

fn critical(cfg: &SolverConfig, opts: &ThresholdOptions) -> Result<ThresholdReport> {
    let kernel = opts.domain.kernel(1.0, opts.frequency_box)?;
    let w = solve_choquard_frequency(1.0, &kernel, cfg, None)?;
    if !w.converged {
        return Err(BranchError::Solver(gpp_solvers::SolverError::InvalidArgument(
            "frequency-normalised state did not converge".into(),
        )));
    }
    let rho_crit = w.rho();
    let mut solves = 0;
    let mut negative = |rho: f64| -> Result<bool> {
        if solves >= opts.max_solves {
            return Err(BranchError::BisectionBudgetExhausted(format!("{solves} solves used")));
        }
        solves += 1;
        let seed = critical_seed(&w.state, &kernel, rho)?;
        let params = GppParams::new(1.0, rho)?;
        Ok(solve_minimizer(Functional::Full, params, cfg, &opts.domain, Some(&seed))
            .is_ok_and(|r| r.converged && r.energy() < 0.0))
    };
    let (mut no, mut yes) = (0.8 * rho_crit, 1.2 * rho_crit);
    if negative(no)? || !negative(yes)? {
        return Err(BranchError::BisectionBudgetExhausted(format!(
            "no sign change of the minimum energy in [{no:.6}, {yes:.6}]"
        )));
    }
    while yes - no > opts.rel_tol * rho_crit {
        let mid = 0.5 * (no + yes);
        if negative(mid)? {
            yes = mid;
        } else {
            no = mid;
        }
    }
    Ok(ThresholdReport {
        alpha: 1.0,
        rho_star: Some(yes),
        rho_star_critical: Some(rho_crit),
        rho_doublestar_lower: None,
        rho_doublestar_empirical: None,
        rho_star_bracket: Some((no, yes)),
        rho_doublestar_bracket: None,
        solves,
    })
}
