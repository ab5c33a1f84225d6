//! Finite global actions.
//!
//! A global action is a family of finite group actions `G_a` on subsets
//! `X_a` of a common point set, indexed by a reflexively related set, with
//! structure homomorphisms between related groups. This crate validates the
//! axioms, decides frame and morphism properties, materializes morphism
//! spaces, checks the exponential law, presents fundamental groups and
//! builds covering actions from subgroups.

pub mod action;
pub mod algebra;
pub mod covering;
pub mod homotopy;
pub mod io;
pub mod morphism;

pub use action::{fixtures, ActionError, ActionViolation, GlobalAction, LocalAction};
pub use algebra::{FiniteGroup, GroupAction, GroupHomomorphism};

use thiserror::Error;

/// Limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on the number of functions an enumeration may range over.
    pub functions: u64,
    /// Row width for bounded homotopy search.
    pub width: usize,
    /// Cap on live cosets during coset enumeration.
    pub cosets: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { functions: 1_000_000, width: 10, cosets: 512 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub needed: u64,
    pub limit: u64,
}

/// Outcome of a decision procedure that reports a counterexample on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<C> {
    Holds,
    Fails(C),
}

impl<C> Verdict<C> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&C> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }

    pub fn map<D>(self, f: impl FnOnce(C) -> D) -> Verdict<D> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(c) => Verdict::Fails(f(c)),
        }
    }
}

/// `base^exp`, saturating at `u64::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u64);
    }
    acc
}
