use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: factor 1 - a*base^{index} vanishes")]
    Pole { index: usize },

    #[error("series division: constant term of the divisor is not invertible")]
    NonInvertible,

    #[error("capacity exceeded: {what} needs {needed} terms but only {available} are available")]
    Capacity {
        what: &'static str,
        needed: usize,
        available: usize,
    },

    #[error("integrity check `{what}` failed at index {index}")]
    Integrity { what: String, index: usize },

    #[error("zero search failed: {0}")]
    SearchFailure(String),

    #[error("singular recurrence: {0}")]
    Singular(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
