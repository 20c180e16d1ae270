//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction and arithmetic
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus degree {got} does not match extension degree {want}")]
    DegreeMismatch { got: usize, want: usize },
    #[error("field order {0} exceeds the supported bound 2^16")]
    OrderTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("code {code} is not an element of a field of order {order}")]
    CodeOutOfRange { code: u32, order: u32 },

    // polynomials and Laurent series
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("base polynomial is reducible")]
    ReducibleBase,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("need {needed} series coefficients, only {got} supplied")]
    NotEnoughCoefficients { needed: usize, got: usize },

    // walls
    #[error("Toeplitz matrix at (n={n}, m={m}) does not fit a sequence of length {r}")]
    OutOfSupport { n: i64, m: i64, r: usize },
    #[error("frame recurrence bookkeeping failed at (m={m}, n={n}): {what}")]
    InternalInconsistency { m: i64, n: i64, what: String },
    #[error("zero region at (m={m}, n={n}) is not a square window: {what}")]
    NonSquareZeroRegion { m: i64, n: i64, what: String },
    #[error("window is not complete; its inner frame leaves the wall")]
    NotComplete,
    #[error("inner frame edge of window at (m={m}, n={n}) is not geometric")]
    NonGeometricEdge { m: i64, n: i64 },
    #[error("wall too short: need r >= {need}, have {got}")]
    TooShort { need: usize, got: usize },

    // sequence generation
    #[error("embedding does not cover symbol {symbol}")]
    EmbeddingIncomplete { symbol: u64 },

    // littlewood layer
    #[error("sequence prefix too short for the requested audit: {0}")]
    InsufficientPrefix(String),

    // census
    #[error("enumeration space of {walls} walls exceeds budget {budget}")]
    SpaceTooLarge { walls: u128, budget: u128 },
    #[error("rectangle parameters outside the formula's regime: {0}")]
    OutOfRegime(String),
    #[error("Q-function is not defined for this blade pair")]
    UnsupportedShapePair,
    #[error("no seed sequence with the requested blade found up to length {searched}")]
    NoSeedWithBlade { searched: usize },
    #[error("square portions overlap; use the rectangle count instead")]
    OverlappingPortions,

    // parsing / io
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
