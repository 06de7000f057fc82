use thiserror::Error;

/// Errors raised by the series, lattice and arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),

    #[error("inexact division: {0}")]
    NotDivisible(String),

    #[error("cannot parse form literal `{0}`")]
    Parse(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
