use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid multiindex: {0}")]
    InvalidMultiindex(String),
    #[error("configuration is not generic: {0}")]
    NotGeneric(String),
    #[error("sampling exhausted after {0} rejection rounds")]
    SamplingExhausted(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("image leaves the affine chart: {0}")]
    ImageNotAffine(String),
    #[error("invalid determinant cross ratio: {0}")]
    InvalidDcr(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("simplex matches neither type pattern: {0}")]
    ClassificationContradiction(String),
    #[error("induced map verification failed: {0}")]
    InducedMapInconsistent(String),
    #[error("no correcting permutation exists: {0}")]
    TheoremViolation(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("singular transform: {0}")]
    SingularTransform(String),
    #[error("not a simplex: {0}")]
    NotASimplex(String),
    #[error("mismatched dimensions: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
