use thiserror::Error;

/// Errors produced by the evaluators, samplers and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the set on which the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model or process parameter violates its invariants.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A numerical procedure failed to reach its requested accuracy.
    #[error("{what} did not converge (estimated error {error:e}, requested {requested:e})")]
    NonConvergence {
        what: String,
        error: f64,
        requested: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
