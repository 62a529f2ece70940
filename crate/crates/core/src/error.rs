use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("level {level} is outside the supported range {min}..={max}")]
    LevelOutOfRange { level: u32, min: u32, max: u32 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("module axiom violated: {identity} ({witness})")]
    AxiomViolation { identity: String, witness: String },

    #[error("module has no inner-product data")]
    MissingGram,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
