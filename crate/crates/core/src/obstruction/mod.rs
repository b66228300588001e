//! Certificates that a bundle's total space carries no complete metric of
//! nonnegative sectional curvature.
//!
//! The central test: a polynomial `Q` in the Euler class of `ξ` and the
//! Pontrjagin classes of `TB ⊕ ξ` whose value on `B = C × T` is nonzero but
//! whose restriction to `C × *` vanishes. [`find_obstruction`] searches for
//! one; the corollary checkers build the witness directly from their
//! hypotheses.

mod certificate;
mod corollaries;
mod realize;
mod search;

use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::bundles::BundleError;
use crate::poly::PolyError;
use crate::spaces::SpaceError;

pub use certificate::{ObstructionCertificate, VerifyError};
pub use corollaries::{
    check_add_norm_bundle, check_flat_product, check_pdual, check_polynomial_q_family, FamilyReport,
};
pub use realize::{betti_obstruction, realize, same_in_finite_cover, CoverReport, RealizeTargets, Violation};
pub use search::{eval_poly, find_obstruction, find_obstruction_with, SearchOptions, DEFAULT_BUDGET, MAX_GENERATORS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Obstructed,
    NoObstructionFound,
    KnownNonnegativelyCurved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "Obstructed",
            Verdict::NoObstructionFound => "NoObstructionFound",
            Verdict::KnownNonnegativelyCurved => "KnownNonnegativelyCurved",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObstructionError {
    #[error("base `{0}` has no torus factor to restrict along")]
    NoBigrading(String),
    #[error("polynomial uses E but the bundle has no rational Euler class")]
    NoEuler,
    #[error("search needs {needed} monomials, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("{0} generator classes exceed the cap of {MAX_GENERATORS}")]
    TooManyGenerators(usize),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("realization constraints violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Realize(Vec<Violation>),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
