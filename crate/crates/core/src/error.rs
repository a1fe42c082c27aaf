use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("request too large: {0}")]
    TooLarge(String),

    #[error("invalid family document: {0}")]
    Schema(String),

    #[error("family document lists no polytopes")]
    EmptyFamily,

    #[error("polytope {0} has an empty vertex list")]
    EmptyPolytope(usize),

    #[error("polytope {polytope}, vertex {vertex}: has {found} coordinates where earlier vertices have {expected}")]
    RaggedVertex { polytope: usize, vertex: usize, expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
