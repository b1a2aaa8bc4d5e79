use thiserror::Error;

/// Errors surfaced by grid, measure, integral, and transformation operations.
///
/// Invariant violations are raised loudly instead of clamping values: a
/// non-solid complement component or a value escaping the unit interval
/// signals a connectivity-convention artifact that must not be silently
/// absorbed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("precondition violation: {0}")]
    PreconditionViolation(String),

    #[error("malformed pair: {0}")]
    MalformedPair(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("not a quasi-homomorphism: {0}")]
    NotAQuasiHomomorphism(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
