use thiserror::Error;

/// Errors produced by the exact and numeric engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor mismatch: {left} vs {right}; lift both operands to a common conductor first")]
    ConductorMismatch { left: u64, right: u64 },

    #[error("cannot lift conductor {from} to {to}: {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },

    #[error("coefficient {index} does not fit in a finite double")]
    NonFinite { index: usize },

    #[error("series constant term must be {expected}")]
    ConstantTerm { expected: &'static str },

    #[error("no primitive {q}-th root of unity in the coefficient ring")]
    MissingRootOfUnity { q: u64 },

    #[error("{what} exceeds budget ({value} > {limit})")]
    Budget { what: &'static str, value: u64, limit: u64 },

    #[error("{0} is not a prime >= 3")]
    NotPrime(u64),

    #[error("N = {0} is outside the tabulated range 1..=6")]
    OutOfTable(u64),

    #[error("Bernoulli-Barnes parameter {0} is zero")]
    ZeroParameter(usize),

    #[error("source table too short: need index {needed}, have {available}")]
    InsufficientTable { needed: usize, available: usize },

    #[error("pole on the summation ray at w = {0}")]
    Pole(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
