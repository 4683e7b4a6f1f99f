use thiserror::Error;

/// Errors raised across the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero ideal is not allowed here")]
    ZeroIdeal,

    #[error(
        "prime {p} divides the index [O_K : Z[theta]]; splitting there needs a monogenic basis"
    )]
    NonMonogenic { p: u128 },

    #[error("residue enumeration of size {size} exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },

    #[error("embedding dimension {dim} exceeds the exact enumeration limit {limit}")]
    DimensionCap { dim: usize, limit: usize },

    #[error("coset does not meet the order")]
    EmptyCoset,

    #[error("integer {0} is outside the certified factorization range")]
    FactorizationLimit(u128),

    #[error("coprimality violated: {0}")]
    NotCoprime(String),

    #[error("hypothesis violated: {reason}; remedy: {remedy}")]
    Hypothesis { reason: String, remedy: String },

    #[error("no admissible parameters: {0}")]
    NoAdmissibleExponent(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
