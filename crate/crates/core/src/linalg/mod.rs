//! Exact scalars and sparse matrices over Q or F_p.

mod elim;
mod matrix;
mod scalar;
mod vector;

pub use elim::{rref, Rref};
pub use matrix::{kernel_basis, rank, solve, Matrix, Quotient, Subspace};
pub use scalar::{Field, Scalar};
pub use vector::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    /// Entries or operands from two different fields.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("cannot parse field {0:?}; expected Q or Fp:<p>")]
    BadField(String),
}
