//! Randomized conformance checking and semantic oracles.
//!
//! [`check_laws`] runs every contract law against a simplifier on seeded
//! random cases. [`soundness_oracle`] and [`enumerate_valuations`] support
//! the semantic side, and [`theorems`] runs both incorporation procedures end
//! to end on random instances.

use thiserror::Error;

use crate::clauses::Valuation;
use crate::contract::Simplifier;

pub mod generators;
pub mod laws;
pub mod mutants;
pub mod theorems;

pub use generators::{case_rng, CaseRng, ClauseGen, EquationGen, Generator};
pub use laws::{check_law, check_laws, replay, Counterexample, LawReport};
pub use mutants::{Mutant, Mutation};
pub use theorems::{run_theorems, ProcedureTally, TheoremConfig, TheoremReport};

pub const DEFAULT_ATOM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("{count} atoms exceed the exhaustive enumeration cap of {cap}; use sampled valuations instead")]
    TooManyAtoms { count: usize, cap: usize },
}

/// All `2^n` valuations of `atoms`. The first atom is the most significant
/// bit, so `[p]` yields `p=false` then `p=true`.
pub fn enumerate_valuations(atoms: &[String], cap: usize) -> Result<Vec<Valuation>, HarnessError> {
    if atoms.len() > cap {
        return Err(HarnessError::TooManyAtoms {
            count: atoms.len(),
            cap,
        });
    }
    let n = atoms.len();
    Ok((0u64..1 << n)
        .map(|bits| {
            atoms.iter().enumerate().fold(Valuation::new(), |v, (j, a)| {
                v.with(a.clone(), bits >> (n - 1 - j) & 1 == 1)
            })
        })
        .collect())
}

/// True iff under every interpretation `after` holds exactly when both
/// `before_q` and `before_s` hold. Evaluation errors count as violations.
pub fn soundness_oracle<S: Simplifier>(
    sim: &S,
    before_q: &[S::Element],
    before_s: &[S::Element],
    after: &[S::Element],
    interps: &[S::Interp],
) -> bool {
    first_unsound_interpretation(sim, before_q, before_s, after, interps).is_none()
}

/// Index of the first interpretation the oracle rejects.
pub fn first_unsound_interpretation<S: Simplifier>(
    sim: &S,
    before_q: &[S::Element],
    before_s: &[S::Element],
    after: &[S::Element],
    interps: &[S::Interp],
) -> Option<usize> {
    interps.iter().position(|i| {
        let expected = sim
            .ceval_list(before_q, i)
            .and_then(|q| Ok(q && sim.ceval_list(before_s, i)?));
        let actual = sim.ceval_list(after, i);
        match (expected, actual) {
            (Ok(e), Ok(a)) => e != a,
            _ => true,
        }
    })
}

/// True iff the two sets agree under every interpretation.
pub fn equivalent<S: Simplifier>(sim: &S, a: &[S::Element], b: &[S::Element], interps: &[S::Interp]) -> bool {
    interps
        .iter()
        .all(|i| matches!((sim.ceval_list(a, i), sim.ceval_list(b, i)), (Ok(x), Ok(y)) if x == y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clauses::{Clause, UnitClauses};

    fn cs(lines: &[&str]) -> Vec<Clause> {
        lines.iter().map(|l| l.parse().unwrap()).collect()
    }

    fn atoms(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn valuation_enumeration() {
        let none = enumerate_valuations(&[], 12).unwrap();
        assert_eq!(none, vec![Valuation::new()]);
        let one = enumerate_valuations(&atoms(&["p"]), 12).unwrap();
        assert_eq!(
            one,
            vec![Valuation::new().with("p", false), Valuation::new().with("p", true)]
        );
        let two = enumerate_valuations(&atoms(&["p", "q"]), 12).unwrap();
        assert_eq!(two.len(), 4);
        assert_eq!(two[1], Valuation::new().with("p", false).with("q", true));
        assert_eq!(
            enumerate_valuations(&atoms(&["p", "q", "r"]), 2),
            Err(HarnessError::TooManyAtoms { count: 3, cap: 2 })
        );
    }

    #[test]
    fn oracle_examples() {
        let u = UnitClauses;
        let vs = enumerate_valuations(&atoms(&["q", "r"]), 12).unwrap();
        let q = cs(&["q"]);
        let s = cs(&["-q r"]);
        let identity: Vec<Clause> = q.iter().chain(&s).cloned().collect();
        assert!(soundness_oracle(&u, &q, &s, &identity, &vs));
        assert!(soundness_oracle(&u, &q, &s, &cs(&["r", "q"]), &vs));
        assert!(!soundness_oracle(&u, &q, &s, &cs(&["r"]), &vs));
        // q=false, r=true is the distinguishing valuation
        assert_eq!(first_unsound_interpretation(&u, &q, &s, &cs(&["r"]), &vs), Some(1));
    }

    #[test]
    fn oracle_rejects_evaluation_errors() {
        let vs = enumerate_valuations(&atoms(&["q"]), 12).unwrap();
        assert!(!soundness_oracle(&UnitClauses, &[], &[], &cs(&["z"]), &vs));
    }
}
