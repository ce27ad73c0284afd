use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("differential does not square to zero (first failure from degree {degree})")]
    NotSquareZero { degree: i32 },
    #[error("map is not a chain map (first failure from degree {degree})")]
    NotChainMap { degree: i32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arity budget exceeded: identities up to arity {required} needed, budget is {budget}")]
    ArityBudgetExceeded { required: usize, budget: usize },
    #[error("{what} exceeds the polynomial degree cap {cap}")]
    DegreeCapOverflow { what: String, cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
