use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact Laurent quotient exists")]
    InexactDivision,
    #[error("cannot evaluate a negative power of q at q = 0")]
    EvalAtZero,
    #[error("mixed scalar variants: {0} and {1}")]
    MixedVariants(&'static str, &'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series diverges: |t|(1-q) = {0} >= 1")]
    DivergentSeries(f64),
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("m = 0 is not allowed here")]
    ZeroM,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{0}` requires an exact q mode")]
    IncompatibleMode(&'static str),
    #[error("sequence of length {got} is too short, need at least {need}")]
    InsufficientSequence { need: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
