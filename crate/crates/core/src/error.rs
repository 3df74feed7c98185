use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("not a composition: {0:?}")]
    InvalidComposition(Vec<usize>),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("cannot parse bracketing {0:?}")]
    Parse(String),
    #[error("inadmissible level function: {0}")]
    Inadmissible(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
