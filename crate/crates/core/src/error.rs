use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {q} exceeds the supported limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },

    #[error("operands belong to different fields")]
    MixedFields,

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("row {0} of the matrix is zero")]
    ZeroRow(usize),

    #[error("matrix does not have full row rank")]
    RankDeficient,

    #[error("encoder is not basic")]
    NonBasic,

    #[error("encoder is not reduced")]
    NotReduced,

    #[error("vector is not a codeword")]
    NotInCode,

    #[error("column {0} would acquire a negative power of z")]
    NonPolynomialImage(usize),

    #[error("series has no inverse: constant term is not 1")]
    NonUnitConstantTerm,

    #[error("weight adjacency matrix is malformed: entry at (0,0) lacks constant term 1")]
    CorruptWam,

    #[error("{what} needs {needed} steps, budget allows {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        budget: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal cross-check failed: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
