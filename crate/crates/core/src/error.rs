use thiserror::Error;

/// Errors raised by instances, oracles, and selection algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation budget exhausted ({used}/{budget} pairs spent)")]
    BudgetExhausted { used: usize, budget: usize },

    #[error("index {index} out of range for pool of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("self-pair ({index}, {index}) is never scored")]
    SelfPair { index: usize },

    #[error("reference set is empty after removing the candidate")]
    EmptyReferenceSet,

    #[error("embedding dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("zero vector has no cosine direction")]
    ZeroVector,

    #[error("instance has no utility matrix")]
    MissingMatrix,

    #[error("malformed utility matrix: {0}")]
    MalformedMatrix(String),

    #[error("instance has no embeddings")]
    MissingEmbeddings,

    #[error("instance has no rewards")]
    MissingRewards,

    #[error("budget {budget} below the required minimum {required}")]
    BudgetTooSmall { budget: usize, required: usize },

    #[error("length mismatch ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid field `{field}`: {detail}")]
    InvalidField { field: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
