use thiserror::Error;

/// Failures raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial arity mismatch: {0} vs {1} variables")]
    Arity(usize, usize),
    #[error("not symmetric: coefficient of {left:?} differs from coefficient of {right:?}")]
    NotSymmetric { left: Vec<u32>, right: Vec<u32> },
    #[error("not quasisymmetric: coefficient of {left:?} differs from coefficient of {right:?}")]
    NotQuasisymmetric { left: Vec<u32>, right: Vec<u32> },
    #[error("edge set is not a chain congruence: closure adds {0:?}")]
    NotChainCongruence((usize, usize)),
    #[error("cost guard exceeded: {what} is {actual}, limit {limit}")]
    CostGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("insufficient data: {0}")]
    Insufficient(String),
    #[error("invariant violated: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
