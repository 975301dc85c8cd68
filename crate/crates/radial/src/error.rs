use thiserror::Error;

/// Failures of the radial discretization layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadialError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("field has zero L2 norm and cannot be projected to a mass sphere")]
    DegenerateField,
    #[error("fields or operators live on different grids")]
    GridMismatch,
    #[error("field contains a non-finite value at index {0}")]
    NonFinite(usize),
    #[error("dilation by t={t} drops a mass fraction {lost:.3e} that lies beyond the sampled support")]
    TruncatedSupport { t: f64, lost: f64 },
    #[error("malformed field dump: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is neither `Clone` nor `PartialEq`; keep its message only.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("{0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for RadialError {
    fn from(e: std::io::Error) -> Self {
        RadialError::Io(IoError(e.to_string()))
    }
}

pub type Result<T> = std::result::Result<T, RadialError>;
