use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus in [2, 65536)")]
    NotPrime(u64),

    #[error("operands belong to different fields (p = {left} and p = {right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("vectors are linearly dependent")]
    Dependent,

    #[error("vector is not contained in the target subspace")]
    NotContained,

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
