use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("coefficient list has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operands belong to different weight data")]
    MixedWeights,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("representation is not nilpotent")]
    NotNilpotent,
    #[error("closure cap {cap} is below the minimum {min}")]
    CapTooSmall { cap: u32, min: u32 },
    #[error("closure not stable: cap {cap} and cap {bigger} give different fingerprints")]
    UnstableClosure { cap: u32, bigger: u32 },
    #[error("extension middle sampling did not stabilize for {0}")]
    UnstableSampling(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("not rigid: {0}")]
    NotRigid(String),
    #[error("not exceptional: {0}")]
    NotExceptional(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not invertible over the integers")]
    NotInvertible,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("undecidable within window: {0}")]
    WindowTooSmall(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
