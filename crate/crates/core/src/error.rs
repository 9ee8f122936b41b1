use thiserror::Error;

/// Errors surfaced by the algebra engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("variable counts differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("polynomial is not homogeneous{0}")]
    Inhomogeneous(String),
    #[error("ideal is not a monomial ideal")]
    NotMonomial,
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("face is not in the complex")]
    FaceNotInComplex,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("too many variables: {0} (limit {1})")]
    TooManyVariables(usize, usize),
    #[error("tangent vector fails syzygy compatibility")]
    InvalidTangent,
    #[error("weight vector does not induce a monomial initial ideal; non-monomial initial form: {0}")]
    NonMonomialInitialForm(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
