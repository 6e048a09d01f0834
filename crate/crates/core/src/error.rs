//! Error type shared by all modules of the crate.
//!
//! Convergence trouble is *not* an error: quadrature routines report it
//! through [`crate::quadrature::Status`]. Errors are reserved for malformed
//! requests (unknown family, bad parameter, invalid interval) and for
//! integrands that produce non-finite values.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: f64,
        reason: String,
    },

    #[error("integrand evaluated to a non-finite value at t = {location:e}")]
    NonFiniteEvaluation { location: f64 },

    #[error("invalid integration spec: {0}")]
    InvalidSpec(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("malformed request: {0}")]
    MalformedRequest(String),
}

pub type Result<T> = std::result::Result<T, Error>;
