use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("modulus must be a positive integer or \"inf\", got {0}")]
    InvalidModulus(i64),
    #[error("letter {letter} does not belong to the {alphabet} alphabet")]
    InvalidLetter { letter: i64, alphabet: &'static str },
    #[error("operation requires the reflection alphabet, got {0}")]
    NotReflection(&'static str),
    #[error("{what} of {requested} exceeds the configured limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("ambient mismatch: Z[sqrt {left}] vs Z[sqrt {right}]")]
    AmbientMismatch { left: u64, right: u64 },
    #[error("{0} is not in the submonoid generated by a z a")]
    NotInSubmonoid(String),
    #[error("dimension has a nonzero sqrt(n) component: {0}")]
    NonIntegralDimension(String),
    #[error("dimensions are defined for n >= 4, got n = {0}")]
    DimensionRange(u64),
    #[error("tensor dimension requires n >= 2, got n = {0}")]
    TensorRange(u64),
    #[error("independent computations disagree: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
