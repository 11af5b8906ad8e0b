use thiserror::Error;

/// Errors raised by the library.
///
/// `Domain` covers invalid arguments, `Range` covers a finite table of
/// arithmetic-function values that is too short for the requested work.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("table exhausted: {name} is defined up to {available}, but {needed} values are required")]
    Range {
        name: String,
        needed: u64,
        available: u64,
    },

    #[error("denominator {denominator} is not invertible modulo {p}")]
    NonInvertible { denominator: String, p: u64 },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
