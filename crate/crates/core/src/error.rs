use thiserror::Error;

/// Errors raised by the testing library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid data matrix: {0}")]
    InvalidData(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty U: a finite direction set needs at least one direction")]
    EmptyDirectionSet,

    #[error("invalid direction {index}: {reason}")]
    InvalidDirection { index: usize, reason: String },

    #[error("NNLS did not converge after {iterations} iterations")]
    NnlsNotConverged { iterations: usize, best: Vec<f64> },

    #[error("NNLS optimality violated: mu'lambda = {0} at the returned optimum")]
    NnlsOptimalityViolated(f64),

    #[error("group exhausted: requested {requested} reflections but only {available} exist")]
    GroupExhausted { requested: u64, available: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no reference mu defined for design {design} at n = {n}")]
    NoReferenceMu { design: String, n: usize },

    #[error("empirical bootstrap is only defined for finite direction sets")]
    BootstrapNeedsFiniteSet,
}

pub type Result<T> = std::result::Result<T, Error>;
