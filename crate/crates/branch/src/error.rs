use thiserror::Error;

#[derive(Debug, Error)]
pub enum BranchError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("need at least {needed} usable rows, found {found}")]
    InsufficientData { needed: usize, found: usize },
    #[error("column changes sign inside the fit window")]
    SignChangeInWindow,
    #[error("bisection budget exhausted: {0}")]
    BisectionBudgetExhausted(String),
    #[error("far field is not resolved: {0}")]
    TailUnderresolved(String),
    #[error("grids are incompatible: {0}")]
    GridMismatch(String),
    #[error(transparent)]
    Solver(#[from] gpp_solvers::SolverError),
    #[error(transparent)]
    Radial(#[from] gpp_radial::RadialError),
    #[error(transparent)]
    Riesz(#[from] gpp_riesz::RieszError),
    #[error(transparent)]
    Energy(#[from] gpp_energy::EnergyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, BranchError>;
