use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is out of its documented range.
    #[error("usage error: {0}")]
    Usage(String),

    /// A table does not describe a valid repeated assignment.
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    /// A sequence file could not be parsed.
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    /// A bundle does not meet the bound a certificate construction relies on.
    #[error("precondition failed: Z[{j}] = {actual} exceeds bound {bound}")]
    Precondition { j: usize, bound: usize, actual: usize },

    /// A result produced by this crate failed its own re-verification.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
