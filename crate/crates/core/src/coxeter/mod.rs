//! Realizations of finite irreducible Coxeter groups, their basic
//! invariants, and Poincare series bookkeeping.

mod datum;
mod invariants;
mod poincare;
mod presets;

pub use datum::{apply_to_form, build_datum, normalize_form, CoxeterDatum, DihedralField, GroupType};
pub use invariants::{
    builtin_invariants, dihedral_invariant, jacobian, validate_invariants, BasicInvariants,
};
pub use poincare::{poincare_closed_form, IntPoly, RationalSeries};
pub use presets::{dihedral_minimal_polynomial, MAX_DIHEDRAL_ORDER};

use crate::exactalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("unsupported group type: {0}")]
    UnsupportedType(String),
    #[error("rank out of range: {0}")]
    RankOutOfRange(String),
    #[error("invalid group datum: {0}")]
    InvalidDatum(String),
    #[error("wrong invariant degrees: {0}")]
    WrongDegrees(String),
    #[error("P{invariant} is not invariant under generator {generator}")]
    NotInvariant { invariant: usize, generator: usize },
    #[error("Jacobian criterion failed: {0}")]
    JacobianCriterionFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
