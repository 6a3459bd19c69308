use thiserror::Error;

use crate::report::{ConditionReport, Witness};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("`{0}` is not an exact scalar literal")]
    BadScalar(String),
    #[error("bad basis label: {0}")]
    BadLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map is not idempotent; column {column} witnesses e(e(x)) != e(x)")]
    NotIdempotent { column: usize },
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Error, Clone)]
pub enum WhaError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error("weak Hopf algebra axioms failed: {}", .0.failed_ids().join(", "))]
    AxiomsFailed(Box<ConditionReport>),
    #[error("antipode is not bijective")]
    SingularAntipode,
    #[error("counital subalgebra not closed under multiplication: {}", .0.describe())]
    NotClosed(Box<Witness>),
}

#[derive(Debug, Error, Clone)]
pub enum CrossedError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("precondition failed ({stage}): {}", .report.failed_ids().join(", "))]
    Precondition {
        stage: &'static str,
        report: Box<ConditionReport>,
    },
    #[error("product is not well defined on the balanced quotient: {}", .0.describe())]
    NotWellDefined(Box<Witness>),
    #[error("verification of the constructed inverse failed: {}", .0.failed_ids().join(", "))]
    InverseCheck(Box<ConditionReport>),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("inconsistent instance: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FixtureError {
    #[error("fixture `{name}` is not available in characteristic {characteristic}")]
    Characteristic { name: &'static str, characteristic: u64 },
    #[error("groupoid fixture needs 2 <= n <= 4, got {0}")]
    OutOfRange(usize),
}
