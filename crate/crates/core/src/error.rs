use thiserror::Error;

/// Errors raised by the library. The CLI maps these onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size n={n}: {reason}")]
    InvalidSize { n: usize, reason: &'static str },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vector is degenerate (constant or zero after centering)")]
    DegenerateVector,

    #[error("block index {k} out of range (max {max})")]
    BlockOutOfRange { k: usize, max: usize },

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})"
    )]
    ConvergenceFailure { sweeps: usize, residual: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error(
        "quadrature failed to reach tolerance {tolerance:e} ({unresolved} intervals hit max depth)"
    )]
    QuadratureFailure { tolerance: f64, unresolved: usize },

    #[error("index out of range: {0}")]
    RangeError(String),

    #[error("invalid function `{label}`: {reason}")]
    InvalidFunction { label: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
