use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the linear-algebra layer and the measurement kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("state vector is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix is not Hermitian: max deviation {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("density operator trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("density operator has negative eigenvalue {eigenvalue:e}")]
    NegativeEigenvalue { eigenvalue: f64 },
    #[error("invalid observable: {0}")]
    InvalidObservable(String),
    #[error("observable must be nondegenerate: eigenspace {index} has rank {rank}")]
    Degenerate { index: usize, rank: usize },
    #[error("vectors are not orthonormal: Gram matrix deviates from identity by {deviation:e}")]
    NotOrthonormal { deviation: f64 },
    #[error("outcome index {index} out of range for {count} outcomes")]
    OutcomeOutOfRange { index: usize, count: usize },
    #[error(
        "conditioning on null event: outcome probability {probability:e} is at or below the floor"
    )]
    NullEvent { probability: f64 },
    #[error("invalid probability {value} at index {index}")]
    InvalidProbability { index: usize, value: f64 },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}
