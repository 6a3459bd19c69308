//! Exact verification toolkit for finite-dimensional weak Hopf algebras and
//! the two weak crossed product constructions built from a measuring and a
//! cocycle: the balanced-tensor product `A ⊗_{H^L} H` and the image of the
//! idempotent `∇_ρ` inside `A ⊗ H`.
//!
//! All arithmetic is exact (rationals or prime fields). Every identity is
//! checked on basis tuples and failures carry a witness.

pub(crate) mod check;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod linalg;
pub mod par;
pub mod report;
pub mod scalar;
pub mod wha;

pub use error::{CrossedError, FixtureError, FormatError, LinalgError, WhaError};
pub use report::{ConditionEntry, ConditionReport, Verdict, Witness};
pub use scalar::{Field, Scalar};
