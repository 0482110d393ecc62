use thiserror::Error;

/// Errors raised by the numeric kernel, the check engine and campaigns.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller violated a precondition (bad parameters, mismatched modes, unknown names).
    #[error("usage error: {0}")]
    Usage(String),

    /// The requested value has no exact rational representation (transcendental or
    /// irrational result); callers fall back to interval arithmetic.
    #[error("exact arithmetic unavailable: {0}")]
    Inexact(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialize(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn inexact(msg: impl Into<String>) -> Self {
        Error::Inexact(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
