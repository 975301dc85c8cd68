//! Branches of normalised states: mass sweeps, asymptotic fits, threshold
//! detection and limit-profile diagnostics.

pub mod curve;
pub mod domain;
pub mod error;
pub mod fit;
pub mod profile;
pub mod shape;
pub mod sweep;
pub mod thresholds;

pub use curve::{BranchCurve, BranchRow, SpotCheck, CSV_HEADER};
pub use domain::{solve_minimizer, DomainPolicy, Functional};
pub use error::{BranchError, Result};
pub use fit::{auto_window, fit_onset, fit_power_law, AsymptoticFit, Column, CurveEnd, MIN_FIT_POINTS};
pub use profile::{decay_diagnostic, limit_profile_error, mass_radius, DecayDiagnostic, Metric, DECAY_SLACK};
pub use shape::{check_shape, ShapeReport, CONCAVITY_TOL};
pub use sweep::{sweep, sweep_families, Family, Sweep, SweepOptions, IDENTITY_GATE};
pub use thresholds::{critical_seed, detect_thresholds, ThresholdOptions, ThresholdReport};
