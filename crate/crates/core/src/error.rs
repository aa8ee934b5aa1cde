use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero has no factorization")]
    ZeroFactorization,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("zero has no p-adic valuation")]
    ZeroValuation,
    #[error("the zero tuple is not a point")]
    ZeroPoint,
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("zeta({0}) diverges; the argument must be at least 2")]
    DivergentZeta(i64),
    #[error("budget exceeded: {needed} enumerations requested, limit {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },
    #[error("oracle too large: {size} states, limit {limit}")]
    OracleTooLarge { size: u128, limit: u128 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("inconsistent field invariants: {0}")]
    InconsistentInvariants(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
