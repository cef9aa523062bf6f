use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter context: T and Q must be nonzero")]
    InvalidContext,

    #[error("parameter contexts differ: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("operation requires a one-parameter context (Q = 1)")]
    NotOneParameter,

    #[error("singular element: determinant is zero")]
    Singular,

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("parameter t = {0} is excluded (t must avoid 0, ±1, ±2)")]
    ExcludedParameter(Rational),

    #[error("t = {t} is not {expected}")]
    WrongCyclotomicKind { t: Rational, expected: &'static str },

    #[error("{0} is not an associate parameter of t = {1}")]
    NotAssociate(Rational, Rational),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {p} is excluded for t = {t}")]
    ExcludedPrime { p: u64, t: Rational },

    #[error("element is singular modulo {0}")]
    SingularModP(u64),

    #[error("parameter relation violated: {0}")]
    ParameterRelation(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
