use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the substitution point: denominator {denominator} vanishes")]
    Pole { denominator: String },
    #[error(
        "q = {0} is not the square of a rational and the expression has odd powers of q^(1/2)"
    )]
    NotASquare(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("linear elimination failed: {0}")]
    Elimination(String),
}

pub type Result<T> = std::result::Result<T, Error>;
