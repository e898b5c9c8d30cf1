//! Exact arithmetic: number fields, sparse polynomials, factored fractions
//! and small dense matrices. Nothing here uses floating point.

mod field;
mod fraction;
mod matrix;
mod poly;

pub use field::{Field, FieldContext, Scalar};
pub use fraction::{factor_over_pool, FactoredFraction};
pub use matrix::{Matrix, RingElement};
pub use poly::{default_var_names, ContactOrder, Homogeneity, Monomial, MultiPoly, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible; the minimal polynomial is reducible")]
    NonInvertible,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("linear form is zero")]
    ZeroForm,
    #[error("invalid field: {0}")]
    InvalidField(String),
}
