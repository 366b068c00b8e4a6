//! Seeded random case generators for the two reference theories.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clauses::{Clause, Literal, Valuation};
use crate::equations::{Equation, FiniteAlgebra, Term};

use super::{enumerate_valuations, DEFAULT_ATOM_CAP};

pub type CaseRng = ChaCha8Rng;

/// Seed for case `case` of stream `stream` under a run seed.
pub fn case_seed(seed: u64, stream: u64, case: u64) -> u64 {
    splitmix(splitmix(seed) ^ splitmix(stream.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ case))
}

pub fn case_rng(seed: u64, stream: u64, case: u64) -> CaseRng {
    CaseRng::seed_from_u64(case_seed(seed, stream, case))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Producer of random elements, element sets and interpretations.
pub trait Generator {
    type Element;
    type Interp;

    fn element(&self, rng: &mut CaseRng) -> Self::Element;

    fn max_set_len(&self) -> usize;

    /// Interpretations to evaluate a case under.
    fn interpretations(&self, rng: &mut CaseRng) -> Vec<Self::Interp>;

    fn element_set(&self, rng: &mut CaseRng) -> Vec<Self::Element> {
        self.element_set_upto(rng, self.max_set_len())
    }

    fn element_set_upto(&self, rng: &mut CaseRng, max_len: usize) -> Vec<Self::Element> {
        let n = rng.random_range(0..=max_len);
        (0..n).map(|_| self.element(rng)).collect()
    }
}

/// Random clauses over a fixed atom universe.
#[derive(Debug, Clone)]
pub struct ClauseGen {
    pub atoms: Vec<String>,
    pub max_literals: usize,
    pub max_set_len: usize,
    pub true_ratio: f64,
    pub unit_ratio: f64,
    pub empty_ratio: f64,
    /// Universes up to this size are enumerated exhaustively.
    pub atom_cap: usize,
    /// Valuations sampled when the universe exceeds `atom_cap`.
    pub samples: usize,
}

impl Default for ClauseGen {
    fn default() -> Self {
        ClauseGen {
            atoms: ["p", "q", "r", "s", "t", "u", "v", "w"].map(String::from).to_vec(),
            max_literals: 4,
            max_set_len: 6,
            true_ratio: 0.05,
            unit_ratio: 0.3,
            empty_ratio: 0.02,
            atom_cap: DEFAULT_ATOM_CAP,
            samples: 256,
        }
    }
}

impl ClauseGen {
    pub fn with_atoms(n: usize) -> Self {
        ClauseGen {
            atoms: (0..n).map(|i| format!("a{i}")).collect(),
            ..ClauseGen::default()
        }
    }

    fn literal(&self, rng: &mut CaseRng) -> Literal {
        Literal {
            atom: self.atoms.choose(rng).expect("empty atom universe").clone(),
            negative: rng.random_bool(0.5),
        }
    }
}

impl Generator for ClauseGen {
    type Element = Clause;
    type Interp = Valuation;

    fn element(&self, rng: &mut CaseRng) -> Clause {
        let roll: f64 = rng.random();
        if roll < self.true_ratio {
            return Clause::True;
        }
        if roll < self.true_ratio + self.empty_ratio || self.atoms.is_empty() {
            return Clause::empty();
        }
        let len = if rng.random_bool(self.unit_ratio) {
            1
        } else {
            rng.random_range(1..=self.max_literals.max(1))
        };
        Clause::new((0..len).map(|_| self.literal(rng)))
    }

    fn max_set_len(&self) -> usize {
        self.max_set_len
    }

    fn interpretations(&self, rng: &mut CaseRng) -> Vec<Valuation> {
        match enumerate_valuations(&self.atoms, self.atom_cap) {
            Ok(all) => all,
            Err(_) => (0..self.samples)
                .map(|_| {
                    self.atoms
                        .iter()
                        .fold(Valuation::new(), |v, a| v.with(a.clone(), rng.random_bool(0.5)))
                })
                .collect(),
        }
    }
}

/// Random ground equations over a fixed signature.
#[derive(Debug, Clone)]
pub struct EquationGen {
    pub signature: Vec<(String, usize)>,
    pub max_depth: usize,
    pub max_set_len: usize,
    pub true_ratio: f64,
    /// Chance that a term position below the root is a constant.
    pub leaf_ratio: f64,
    pub algebras: usize,
    pub min_carrier: usize,
    pub max_carrier: usize,
}

impl Default for EquationGen {
    fn default() -> Self {
        EquationGen {
            signature: vec![("a".into(), 0), ("b".into(), 0), ("f".into(), 1), ("g".into(), 2)],
            max_depth: 4,
            max_set_len: 6,
            true_ratio: 0.05,
            leaf_ratio: 0.4,
            algebras: 64,
            min_carrier: 2,
            max_carrier: 3,
        }
    }
}

impl EquationGen {
    /// Random term of depth at most `depth` (a constant has depth 1).
    pub fn term(&self, rng: &mut CaseRng, depth: usize) -> Term {
        let constants: Vec<&(String, usize)> = self.signature.iter().filter(|(_, a)| *a == 0).collect();
        let functions: Vec<&(String, usize)> = self.signature.iter().filter(|(_, a)| *a > 0).collect();
        if depth <= 1 || functions.is_empty() || rng.random_bool(self.leaf_ratio) {
            let (sym, _) = constants.choose(rng).expect("signature has no constants");
            return Term::constant(sym.clone());
        }
        let (sym, arity) = functions.choose(rng).unwrap();
        Term::app(sym.clone(), (0..*arity).map(|_| self.term(rng, depth - 1)).collect())
    }

    pub fn algebra(&self, rng: &mut CaseRng) -> FiniteAlgebra {
        let n = rng.random_range(self.min_carrier..=self.max_carrier);
        let mut alg = FiniteAlgebra::new(n);
        for (sym, arity) in &self.signature {
            let table = (0..n.pow(*arity as u32)).map(|_| rng.random_range(0..n)).collect();
            alg.define(sym.clone(), *arity, table);
        }
        alg
    }
}

impl Generator for EquationGen {
    type Element = Equation;
    type Interp = FiniteAlgebra;

    fn element(&self, rng: &mut CaseRng) -> Equation {
        if rng.random_bool(self.true_ratio) {
            return Equation::True;
        }
        let d1 = rng.random_range(1..=self.max_depth.max(1));
        let d2 = rng.random_range(1..=self.max_depth.max(1));
        Equation::new(self.term(rng, d1), self.term(rng, d2))
    }

    fn max_set_len(&self) -> usize {
        self.max_set_len
    }

    fn interpretations(&self, rng: &mut CaseRng) -> Vec<FiniteAlgebra> {
        (0..self.algebras).map(|_| self.algebra(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_cases() {
        let g = ClauseGen::default();
        let a: Vec<_> = (0..20).map(|c| g.element_set(&mut case_rng(5, 0, c))).collect();
        let b: Vec<_> = (0..20).map(|c| g.element_set(&mut case_rng(5, 0, c))).collect();
        assert_eq!(a, b);
        let c: Vec<_> = (0..20).map(|c| g.element_set(&mut case_rng(6, 0, c))).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn generated_terms_respect_depth_and_signature() {
        let g = EquationGen::default();
        let mut rng = case_rng(1, 0, 0);
        for _ in 0..500 {
            let t = g.term(&mut rng, 3);
            assert!(t.depth() <= 3);
        }
        let alg = g.algebra(&mut rng);
        assert!((2..=3).contains(&alg.carrier()));
        assert_eq!(alg.signature().len(), 4);
    }

    #[test]
    fn clause_interpretations_are_exhaustive_under_cap() {
        let g = ClauseGen::default();
        assert_eq!(g.interpretations(&mut case_rng(0, 0, 0)).len(), 256);
        let big = ClauseGen {
            atom_cap: 4,
            samples: 10,
            ..ClauseGen::default()
        };
        let vs = big.interpretations(&mut case_rng(0, 0, 0));
        assert_eq!(vs.len(), 10);
        assert!(vs.iter().all(|v| v.len() == 8));
    }
}
