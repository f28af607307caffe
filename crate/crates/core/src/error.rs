use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown identity tag {0:?}")]
    UnknownTag(String),
    #[error("structure check failed: {0}")]
    InvalidStructure(String),
    #[error("operation needs a hull")]
    MissingHull,
    #[error("order must be at least 1, got {0}")]
    OrderTooSmall(usize),
    #[error("bracket filtration cut is not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("comultiplication does not descend to H0: {0}")]
    DescentFailure(String),
    #[error("maximal ideal is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element is not Lie-valued: {0}")]
    NotLieValued(String),
    #[error("logarithm needs constant term 1, found {0}")]
    BadConstantTerm(String),
    #[error("morphism is not atomic: {0}")]
    NotAtomicMorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;
