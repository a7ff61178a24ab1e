use thiserror::Error;

/// Errors raised while building samples or evaluating statistics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sample needs at least {min} observations, got {got}")]
    TooFewObservations { min: usize, got: usize },

    #[error("sample contains a non-finite value at position {index}")]
    NonFinite { index: usize },

    #[error("all observations are equal; the scale estimate is zero")]
    ConstantSample,

    #[error("zero spacing between order statistics {lo} and {hi}")]
    ZeroSpacing { lo: usize, hi: usize },

    #[error("tied probability transforms between order statistics {lo} and {hi}")]
    DegenerateTies { lo: usize, hi: usize },

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(&'static str),

    #[error("non-positive logarithm argument in {0}")]
    NumericalOverflow(&'static str),

    #[error("no admissible window size for n = {0}")]
    EmptyWindowRange(usize),

    #[error("sample size {n} is not supported by {what}")]
    UnsupportedN { n: usize, what: &'static str },

    #[error("invalid parameters for {model}: {reason}")]
    InvalidParams { model: &'static str, reason: String },

    #[error("unknown submodel '{0}'")]
    UnknownSubmodel(String),

    #[error("unknown test '{0}'")]
    UnknownTest(String),

    #[error("{test} failed on replicate {replicate}: {source}")]
    InReplicate { test: &'static str, replicate: u64, source: Box<Error> },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
