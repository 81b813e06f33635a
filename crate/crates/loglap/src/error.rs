//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature failed to reach the requested tolerance. Carries the
    /// best estimate obtained and the error bound attached to it.
    #[error("quadrature did not converge ({context}): best estimate {estimate:e}, error bound {error_bound:e}")]
    NonConvergence {
        estimate: f64,
        error_bound: f64,
        context: String,
    },

    /// The integrand fails the decay/integrability hypothesis of an operator.
    #[error("integrability violated: {0}")]
    Integrability(String),

    /// A grid or field failed structural validation.
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
