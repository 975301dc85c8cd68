use thiserror::Error;

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Radial(#[from] gpp_radial::RadialError),
    #[error(transparent)]
    Riesz(#[from] gpp_riesz::RieszError),
    #[error(transparent)]
    Energy(#[from] gpp_energy::EnergyError),
}

pub type Result<T> = std::result::Result<T, ValidationError>;
