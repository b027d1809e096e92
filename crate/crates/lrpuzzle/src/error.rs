use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input data.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Bad command-line or request syntax.
    #[error("usage: {0}")]
    Usage(String),
    /// An operation is not defined for this combination of arguments.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Two independent computations disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
