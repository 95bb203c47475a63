use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial of degree {degree} exceeds degree bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },

    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not real-rooted: {0}")]
    NotRealRooted(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("enumeration budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u128 },

    #[error("exact division left a nonzero remainder: {0}")]
    InexactDivision(String),

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
