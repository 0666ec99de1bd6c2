use thiserror::Error;

/// Errors raised by ring, polynomial, ideal and Cartier operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    ContextMismatch,
    #[error("exponent overflow: result exponent would exceed {limit}")]
    ExponentOverflow { limit: u64 },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("polynomial `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,
    #[error("division is not exact")]
    InexactDivision,
    #[error("explicit level a_{0} is missing")]
    MissingLevel(u32),
    #[error("invalid Cartier subalgebra description: {0}")]
    InvalidSpec(String),
    #[error("closure violation at level {e}: generator `{witness}` of K_e is not in L_e")]
    ClosureViolation { e: u32, witness: String },
}

pub type Result<T> = std::result::Result<T, Error>;
