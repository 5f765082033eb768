//! Exact scalars (Q and F_p) and dense matrices over them.

pub mod echelon;
pub mod field;
pub mod matrix;
pub mod scalar;

pub use echelon::Echelon;
pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
pub use matrix::{random_matrix, ExactMatrix, Matrix};
pub use scalar::ExactScalar;
