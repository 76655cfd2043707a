use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight {0}: expected an even weight of at least 4")]
    InvalidWeight(i64),
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: u32, right: u32 },
    #[error("precision {have} too small, need at least {need}")]
    PrecisionTooSmall { have: usize, need: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("the space of modular forms of weight {0} is zero")]
    EmptySpace(u32),
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("malformed linear system: {0}")]
    MalformedSystem(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("no even unimodular lattice of signature ({0}, 2) in this construction")]
    InvalidSignature(i64),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
}
