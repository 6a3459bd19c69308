//! Exact linear algebra over labeled finite-dimensional spaces.

mod echelon;
mod matrix;
mod space;

pub use echelon::{
    basis_matrix, image_of_idempotent, quotient_by, solve_linear, Echelon, IdempotentImage,
    LinearSystem, QuotientSpace, Subspace,
};
pub use matrix::{LinMap, Matrix};
pub use space::{tensor_space, FinSpace, Vector};
