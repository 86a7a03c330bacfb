use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series families differ: {0} vs {1}")]
    FamilyMismatch(String, String),

    #[error("substitution is not triangular: image of variable {0} has a term of weight {1} < {2}")]
    NonTriangular(usize, u64, u64),

    #[error("no image supplied for variable index {0}")]
    MissingImage(usize),

    #[error("negative auxiliary exponent {0} below the allowed floor {1}")]
    NegativeAux(i32, i32),

    #[error("series has a nonzero constant term where none is allowed")]
    NonzeroConstant,

    #[error("series cannot be exponentiated or logged within its caps")]
    Divergent,

    #[error("size mismatch: |{0}| = {1} but |{2}| = {3}")]
    SizeMismatch(String, usize, String, usize),

    #[error("({0}, {1}) is not a corner")]
    NotACorner(usize, usize),

    #[error("query out of range: {0}")]
    OutOfRange(String),

    #[error("linear system is singular: {0}")]
    Singular(String),

    #[error("insufficient sample points: {0}")]
    InsufficientPoints(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
