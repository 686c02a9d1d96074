use thiserror::Error;

/// Errors raised by the algebra, interpolation and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-exact division: {dividend} is not divisible by {divisor}")]
    NonExactDivision { dividend: String, divisor: String },

    #[error("division by zero: variable {var} with negative exponent bound to zero")]
    DivisionByZeroSymbol { var: String },

    #[error("pole hit: denominator factor {factor} vanishes")]
    PoleHit { factor: String },

    #[error("missing binding for variable {var}")]
    MissingBinding { var: String },

    #[error("constant term of {factor} is not invertible in the series ring")]
    NonInvertibleConstantTerm { factor: String },

    #[error("{what} has a negative power of {var}; not representable in a truncated series")]
    NegativeSeriesPower { what: String, var: String },

    #[error("truncation order {order} unreachable for infinite product base {base}")]
    TruncationUnreachable { base: String, order: usize },

    #[error("index {index} out of range (available: {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sampling exhausted after {retries} retries: {reason}")]
    SamplingExhausted { retries: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
