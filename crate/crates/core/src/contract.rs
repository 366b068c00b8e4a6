//! The abstract simplifier contract.
//!
//! A [`Simplifier`] bundles four operations over some theory of database
//! elements: simplification of an element by a set, recognition of the
//! distinguished TRUE element, evaluation under an interpretation, and a
//! size measure. The incorporation engine only ever talks to this trait.
//!
//! Every implementation is expected to obey eight laws:
//!
//! | law                  | statement                                                          |
//! |----------------------|--------------------------------------------------------------------|
//! | scount-natural       | `scount(x) >= 0`                                                   |
//! | scount-simplify      | `simplify(x, y) == x` or `scount(simplify(x, y)) < scount(x)`      |
//! | simplify-idempotent  | `simplify(simplify(x, y), y) == simplify(x, y)`                    |
//! | simplify-subset      | `x ⊆ y` and `rewritable(a, x)` implies `rewritable(a, y)`          |
//! | simplify-append      | `!rewritable(a, x)` and `!rewritable(a, y)` implies `!rewritable(a, x ++ y)` |
//! | ceval-boolean        | `ceval(x, i)` always yields a definite truth value                 |
//! | true-symbolp-ceval   | `is_true_symbol(x)` implies `ceval(x, i)` is true                  |
//! | simplify-sound       | `ceval_list(y, i)` implies `ceval(simplify(x, y), i) == ceval(x, i)` |
//!
//! The laws are not assumed; [`crate::harness`] checks them on random cases.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An ordered sequence of elements. Duplicates are allowed and order matters.
pub type ElementSet<E> = Vec<E>;

/// Evaluation failed to produce a truth value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom `{0}` is not in the valuation's universe")]
    UnknownAtom(String),
    #[error("symbol `{symbol}` with arity {arity} is not in the algebra's signature")]
    UnknownSymbol { symbol: String, arity: usize },
    #[error("evaluation is indeterminate: {0}")]
    Indeterminate(String),
}

/// The four constrained operations of a simplification theory.
///
/// Implementations must be pure. Element equality (`Eq`) is structural
/// equality on canonical forms and is the only notion of "changed" used
/// anywhere in the engine.
pub trait Simplifier {
    type Element: Clone + Eq + fmt::Debug;
    type Interp;

    /// Simplify `x` by the members of `y`.
    fn simplify(&self, x: &Self::Element, y: &[Self::Element]) -> Self::Element;

    fn is_true_symbol(&self, x: &Self::Element) -> bool;

    /// Evaluate `x` under `i`. The ceval-boolean law demands `Ok` for every
    /// element whose vocabulary the interpretation covers.
    fn ceval(&self, x: &Self::Element, i: &Self::Interp) -> Result<bool, EvalError>;

    /// Size of an element. Signed so that the scount-natural law is checkable.
    fn scount(&self, x: &Self::Element) -> i64;

    /// True iff `y` changes `x`.
    fn rewritable(&self, x: &Self::Element, y: &[Self::Element]) -> bool {
        self.simplify(x, y) != *x
    }

    /// Conjunction of `ceval` over `x`; true on the empty set.
    fn ceval_list(&self, x: &[Self::Element], i: &Self::Interp) -> Result<bool, EvalError> {
        for e in x {
            if !self.ceval(e, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Names of the eight contract laws, in catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Law {
    #[serde(rename = "scount-natural")]
    ScountNatural,
    #[serde(rename = "scount-simplify")]
    ScountSimplify,
    #[serde(rename = "simplify-idempotent")]
    SimplifyIdempotent,
    #[serde(rename = "simplify-subset")]
    SimplifySubset,
    #[serde(rename = "simplify-append")]
    SimplifyAppend,
    #[serde(rename = "ceval-boolean")]
    CevalBoolean,
    #[serde(rename = "true-symbolp-ceval")]
    TrueSymbolpCeval,
    #[serde(rename = "simplify-sound")]
    SimplifySound,
}

impl Law {
    pub const ALL: [Law; 8] = [
        Law::ScountNatural,
        Law::ScountSimplify,
        Law::SimplifyIdempotent,
        Law::SimplifySubset,
        Law::SimplifyAppend,
        Law::CevalBoolean,
        Law::TrueSymbolpCeval,
        Law::SimplifySound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::ScountNatural => "scount-natural",
            Law::ScountSimplify => "scount-simplify",
            Law::SimplifyIdempotent => "simplify-idempotent",
            Law::SimplifySubset => "simplify-subset",
            Law::SimplifyAppend => "simplify-append",
            Law::CevalBoolean => "ceval-boolean",
            Law::TrueSymbolpCeval => "true-symbolp-ceval",
            Law::SimplifySound => "simplify-sound",
        }
    }

    pub fn index(self) -> usize {
        Law::ALL.iter().position(|&l| l == self).unwrap()
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .iter()
            .copied()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown law `{s}`"))
    }
}
