use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field of order {q} exceeds the enumeration bound {bound}")]
    Capacity { q: u64, bound: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("character undefined at p = {0}")]
    UndefinedCharacter(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("quadrature budget of {evaluations} evaluations exceeded (best estimate {estimate}, error estimate {error})")]
    BudgetExceeded {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("cross-check failed for q = {q}: enumeration gave {enumerated}, formula gave {formula}")]
    CrossCheck { q: u64, enumerated: u64, formula: u64 },

    #[error("worker pool: {0}")]
    Pool(String),
}

pub type Result<T> = std::result::Result<T, Error>;
