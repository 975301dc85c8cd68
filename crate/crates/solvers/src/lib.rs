//! Solvers for the stationary states of the radial Gross–Pitaevskii–Poisson
//! problem and of its Choquard and Thomas–Fermi limits.

mod choquard;
mod common;
mod config;
mod error;
mod flow;
mod ground;
mod krylov;
mod mountain;
mod newton;
mod problem;
mod result;
mod tf;

pub use choquard::{
    gn_quotient_value, minimize_choquard, mp_level_from_quotient, quotient_from_mp_level, solve_choquard_frequency,
    solve_choquard_min, solve_choquard_mp, ChoquardMpLevels, ChoquardMpSolution,
};
pub use common::{edge_mass_fraction, COLLAPSE_FRACTION};
pub use config::SolverConfig;
pub use error::{Result, SolverError};
pub use ground::minimize_normalized;
pub use mountain::{choquard_seed, cone_ratio, solve_mp_type2};
pub use result::{SolveKind, SolveResult, SolveSummary, Termination};
pub use tf::{solve_tf, TfDiagnostics, TfSolution};
