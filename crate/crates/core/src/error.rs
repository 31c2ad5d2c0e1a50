use thiserror::Error;

/// Every failure the library can signal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("zero denominator Pochhammer factor in basic series (lower parameter {index}, k = {k})")]
    ZeroDenominator { index: usize, k: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("duplicated abscissa at sample {0}")]
    DuplicateAbscissa(usize),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("non-convergent infinite product: |q| must be < 1")]
    NonConvergent,
    #[error("degree {n} out of range 0..={max}")]
    DegreeOutOfRange { n: usize, max: usize },
    #[error("s out of lattice range 0..{max} (got {s})")]
    NodeOutOfRange { s: i64, max: usize },
    #[error("zero lattice increment at s = {0}")]
    ZeroIncrement(i64),
    #[error("lattice not injective: x({0}) = x({1})")]
    NotInjective(i64, i64),
    #[error("Krall family does not exist at degree {degree}: kappa_{{n-1}}(0,N) = 0")]
    NonExistent { degree: usize },
    #[error("degenerate q^beta1 at s = {s}, n = {n}")]
    Degenerate { s: i64, n: usize },
    #[error("quasi-definiteness fails: vanishing norm at degree {0}")]
    QuasiDefinite(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config field `{field}`: {msg}")]
    Config { field: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
