use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("position {position} out of range for n = {n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("unknown candidate {candidate} for n = {n}")]
    UnknownCandidate { candidate: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid range: k = {k} must be smaller than l = {l}")]
    InvalidRange { k: usize, l: usize },
    #[error("exact distance unavailable at this size: n = {n} exceeds cap {cap}")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("invalid cost matrix: {0}")]
    InvalidCost(String),
    #[error("profile must contain at least one vote")]
    EmptyProfile,
    #[error(
        "stationary solver did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Short machine-readable tag used by the command line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSize(_) => "invalid-size",
            Error::NotAPermutation(_) => "not-a-permutation",
            Error::PositionOutOfRange { .. } => "out-of-range",
            Error::UnknownCandidate { .. } => "unknown-candidate",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::InvalidWeights(_) => "invalid-weights",
            Error::InvalidRange { .. } => "invalid-range",
            Error::ExactCapExceeded { .. } => "exact-cap-exceeded",
            Error::InvalidCost(_) => "invalid-cost",
            Error::EmptyProfile => "empty-profile",
            Error::NoConvergence { .. } => "no-convergence",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
