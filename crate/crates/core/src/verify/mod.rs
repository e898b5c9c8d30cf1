//! Executable checks of the identities satisfied by the objects in
//! [`crate::saito`], grouped into independently selectable suites.
//!
//! Every check is exact. A failing check carries a [`Witness`] naming the
//! offending matrix entry where one exists.

mod basis;
mod contact;
mod flat;
mod report;
mod structure;

use std::thread;

use thiserror::Error;

use crate::exactalg::{AlgebraError, FactoredFraction, Matrix};
use crate::saito::{SaitoContext, SaitoError};

pub use basis::{check_basis, check_hodge};
pub use contact::{contact_order_check, ContactReport};
pub use flat::check_flat;
pub use report::{CheckReport, CheckResult, CheckStatus, Summary, Witness};
pub use structure::{check_bk, check_christoffel, check_context, levi_civita_connection};

use report::{timed, Outcome};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("derivation does not have polynomial X-frame coefficients")]
    NonPolynomialCoefficients,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Context,
    Bk,
    Christoffel,
    Basis,
    Hodge,
    Flat,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Context, Suite::Bk, Suite::Christoffel, Suite::Basis, Suite::Hodge, Suite::Flat];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Context => "context",
            Suite::Bk => "bk",
            Suite::Christoffel => "christoffel",
            Suite::Basis => "basis",
            Suite::Hodge => "hodge",
            Suite::Flat => "flat",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub k_max: usize,
    pub m_max: u32,
    pub p_max: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { k_max: 3, m_max: 7, p_max: 3 }
    }
}

pub fn run_suite(ctx: &SaitoContext, suite: Suite, bounds: Bounds) -> Vec<CheckResult> {
    match suite {
        Suite::Context => check_context(ctx),
        Suite::Bk => check_bk(ctx, bounds.k_max),
        Suite::Christoffel => check_christoffel(ctx),
        Suite::Basis => check_basis(ctx, bounds.k_max, bounds.m_max),
        Suite::Hodge => check_hodge(ctx, bounds.p_max),
        Suite::Flat => check_flat(ctx, bounds.k_max),
    }
}

/// Runs the suites concurrently over one shared context and assembles the
/// results in canonical suite order.
pub fn run_suites(ctx: &SaitoContext, suites: &[Suite], bounds: Bounds, invariants_id: &str) -> CheckReport {
    let mut order: Vec<Suite> = suites.to_vec();
    order.sort();
    order.dedup();
    let per_suite: Vec<Vec<CheckResult>> = thread::scope(|s| {
        let handles: Vec<_> =
            order.iter().map(|&suite| s.spawn(move || run_suite(ctx, suite, bounds))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let datum = ctx.datum();
    CheckReport {
        group: datum.label(),
        invariants: invariants_id.to_string(),
        field: datum.field().render_minimal_polynomial(),
        results: per_suite.into_iter().flatten().collect(),
    }
}

pub(crate) fn check(
    name: impl Into<String>,
    formula: &str,
    f: impl FnOnce() -> Result<Outcome, SaitoError>,
) -> CheckResult {
    timed(name, formula, || match f() {
        Ok(o) => o,
        Err(SaitoError::NonPolynomialEntry { object, i, j, entry }) => {
            Outcome::Internal(Witness::at(i, j, format!("{object} entry is not a polynomial: {entry}")))
        }
        Err(e) => Outcome::Internal(Witness::note(e.to_string())),
    })
}

/// Entrywise exact comparison.
pub(crate) fn compare(lhs: &Matrix<FactoredFraction>, rhs: &Matrix<FactoredFraction>) -> Outcome {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Outcome::Fail(Witness::note(format!(
            "shape {}x{} vs {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        )));
    }
    match lhs.first_difference(rhs) {
        None => Outcome::Pass,
        Some((i, j)) => Outcome::Fail(Witness::at(
            i,
            j,
            format!("{} != {}", lhs.get(i, j).render(), rhs.get(i, j).render()),
        )),
    }
}

pub(crate) fn simplified(m: Matrix<FactoredFraction>) -> Matrix<FactoredFraction> {
    m.map(|f| {
        let mut f = f.clone();
        f.simplify();
        f
    })
}
