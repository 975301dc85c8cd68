use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Radial(#[from] gpp_radial::RadialError),
    #[error(transparent)]
    Riesz(#[from] gpp_riesz::RieszError),
}

pub type Result<T> = std::result::Result<T, EnergyError>;
