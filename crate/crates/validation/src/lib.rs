//! Measured identities and properties, each reported as a [`Check`] against
//! its bound. Shared by the `verify` command and the acceptance suite.

mod checks;
mod error;

pub use checks::{
    dilation_checks, fiber_algebra_checks, identity_checks, inequality_checks, random_field, shape_checks,
    symmetry_check, Check, VerifyReport,
};
pub use error::{Result, ValidationError};
