use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error("character is not primitive: modulus {modulus}, conductor {conductor}")]
    NotPrimitive { modulus: u64, conductor: u64 },

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("not extractable: parity condition (-1)^(m+n+1) chi(-1) = 1 fails for m={m}, n={n}")]
    Parity { m: u32, n: u32 },

    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),

    #[error("invalid quadruple: {0}")]
    InvalidQuadruple(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("central value vanishes or sign forces zero: denominator of the ratio is 0")]
    ZeroDenominator,

    #[error("unsupported factorization: {0}")]
    UnsupportedFactorization(String),

    #[error("internal consistency check failed: {0}")]
    SelfCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture error at line {line}: {message}")]
    Fixture { line: usize, message: String },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
