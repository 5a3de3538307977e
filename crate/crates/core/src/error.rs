use thiserror::Error;

/// Errors produced by the exact and numerical layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("pairing not skew-symmetric")]
    NotSkew,

    #[error("pairing matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("lattice rank must be >= 1")]
    RankZero,

    #[error("cycle {0} is the zero vector")]
    ZeroCycle(usize),

    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),

    #[error("pole at q = -1: closed form f(q) = (1+2q)/(1+q) is singular")]
    PoleAtConifold,

    #[error("integration failure: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
