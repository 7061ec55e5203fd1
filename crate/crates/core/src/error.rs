use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration did not reach its tolerance.
    #[error("no convergence after {terms} terms: {what}")]
    Convergence { what: String, terms: usize },

    /// A root was requested that does not exist below the scan cap.
    #[error("root {index} of {what} not found below x = {cap}")]
    RootNotFound { what: String, index: usize, cap: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Embedded data failed its checksum or could not be parsed.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
