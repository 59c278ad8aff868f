use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p must be an integer >= 2, got {0}")]
    InvalidP(i64),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("path is not composable at arrow `{0}`")]
    NotComposable(String),
    #[error("relation is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("algebra is not finite dimensional below degree {0}")]
    NotFiniteDimensional(usize),
    #[error("representation invalid: {0}")]
    InvalidRepresentation(String),
    #[error("map does not commute with arrow `{0}`")]
    NotAMorphism(String),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("algebra is not basic: {0}")]
    NotBasic(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("lifting system has no solution at step {0}")]
    LiftFailed(usize),
    #[error("quotient ring is not zero-dimensional")]
    PositiveDimensional,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("insufficient data: need at least {needed} terms, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
