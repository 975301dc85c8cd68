use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{failed} of {total} checks failed")]
    VerifyFailed { failed: usize, total: usize },
    #[error(transparent)]
    Branch(#[from] gpp_branch::BranchError),
    #[error(transparent)]
    Solver(#[from] gpp_solvers::SolverError),
    #[error(transparent)]
    Radial(#[from] gpp_radial::RadialError),
    #[error(transparent)]
    Riesz(#[from] gpp_riesz::RieszError),
    #[error(transparent)]
    Energy(#[from] gpp_energy::EnergyError),
    #[error(transparent)]
    Validation(#[from] gpp_validation::ValidationError),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LabError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Self::Io { path: path.as_ref().display().to_string(), source }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
