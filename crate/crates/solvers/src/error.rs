use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("kernel order {kernel} does not match the requested order {requested}")]
    OrderMismatch { kernel: f64, requested: f64 },
    #[error("multiplier bracket lost while enforcing the mass constraint")]
    BisectionFailure,
    #[error("iterate left the admissible cone: {0}")]
    LeftAdmissibleCone(String),
    #[error(transparent)]
    Radial(#[from] gpp_radial::RadialError),
    #[error(transparent)]
    Riesz(#[from] gpp_riesz::RieszError),
    #[error(transparent)]
    Energy(#[from] gpp_energy::EnergyError),
}

pub type Result<T> = std::result::Result<T, SolverError>;
