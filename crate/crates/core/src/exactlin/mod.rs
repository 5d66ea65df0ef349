//! Exact dense linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;

pub use matrix::{Matrix, Rref};
pub use scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}
