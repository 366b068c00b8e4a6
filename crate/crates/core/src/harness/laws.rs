//! Randomized checking of the eight contract laws.
//!
//! Every case draws from its own RNG, seeded from `(seed, law, case index)`,
//! so a counterexample is replayed by rerunning exactly that case.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::contract::Law;
use crate::format::ElementFormat;

use super::generators::{case_rng, CaseRng, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub law: Law,
    pub seed: u64,
    pub case: u64,
    /// Named inputs rendered in the theory's file format.
    pub inputs: Vec<(String, String)>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: Law,
    pub cases: u64,
    /// Cases where the law's hypothesis never held.
    pub vacuous: u64,
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(
                f,
                "{:<20} ok      {} cases ({} vacuous)",
                self.law.name(),
                self.cases,
                self.vacuous
            ),
            Some(cx) => {
                writeln!(
                    f,
                    "{:<20} FAILED  at case {} (seed {})",
                    self.law.name(),
                    cx.case,
                    cx.seed
                )?;
                for (name, text) in &cx.inputs {
                    writeln!(f, "    {name}:")?;
                    for line in text.lines() {
                        writeln!(f, "      {line}")?;
                    }
                    if text.is_empty() {
                        writeln!(f, "      (empty)")?;
                    }
                }
                writeln!(f, "    expected: {}", cx.expected)?;
                write!(f, "    actual:   {}", cx.actual)
            }
        }
    }
}

enum Outcome {
    Pass,
    Vacuous,
    Fail {
        inputs: Vec<(String, String)>,
        expected: String,
        actual: String,
    },
}

struct Case<'a, S, G> {
    sim: &'a S,
    gen: &'a G,
    rng: CaseRng,
}

impl<S, G> Case<'_, S, G>
where
    S: ElementFormat,
    G: Generator<Element = S::Element, Interp = S::Interp>,
{
    fn element(&mut self) -> S::Element {
        self.gen.element(&mut self.rng)
    }

    fn set(&mut self) -> Vec<S::Element> {
        self.gen.element_set(&mut self.rng)
    }

    fn show(&self, e: &S::Element) -> String {
        self.sim.render(e)
    }

    fn show_set(&self, s: &[S::Element]) -> String {
        self.sim.render_set(s)
    }

    fn named(&self, pairs: &[(&str, &S::Element)], sets: &[(&str, &[S::Element])]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(n, e)| (n.to_string(), self.show(e)))
            .chain(sets.iter().map(|(n, s)| (n.to_string(), self.show_set(s))))
            .collect()
    }

    fn run(&mut self, law: Law) -> Outcome {
        let sim = self.sim;
        match law {
            Law::ScountNatural => {
                let x = self.element();
                let y = self.set();
                let r = sim.simplify(&x, &y);
                for e in [&x, &r] {
                    let n = sim.scount(e);
                    if n < 0 {
                        return Outcome::Fail {
                            inputs: self.named(&[("x", &x), ("element", e)], &[("y", &y)]),
                            expected: "scount(element) >= 0".into(),
                            actual: format!("scount(element) = {n}"),
                        };
                    }
                }
                Outcome::Pass
            }
            Law::ScountSimplify => {
                let x = self.element();
                let y = self.set();
                let r = sim.simplify(&x, &y);
                if r != x && sim.scount(&r) >= sim.scount(&x) {
                    return Outcome::Fail {
                        inputs: self.named(&[("x", &x)], &[("y", &y)]),
                        expected: format!("simplify(x, y) = x or scount below {}", sim.scount(&x)),
                        actual: format!("simplify(x, y) = {} with scount {}", self.show(&r), sim.scount(&r)),
                    };
                }
                Outcome::Pass
            }
            Law::SimplifyIdempotent => {
                let x = self.element();
                let y = self.set();
                let r = sim.simplify(&x, &y);
                let rr = sim.simplify(&r, &y);
                if rr != r {
                    return Outcome::Fail {
                        inputs: self.named(&[("x", &x)], &[("y", &y)]),
                        expected: format!("simplify(simplify(x, y), y) = {}", self.show(&r)),
                        actual: format!("simplify(simplify(x, y), y) = {}", self.show(&rr)),
                    };
                }
                Outcome::Pass
            }
            Law::SimplifySubset => {
                let y = self.set();
                let x: Vec<S::Element> = y.iter().filter(|_| self.rng.random_bool(0.5)).cloned().collect();
                let a = self.element();
                if !sim.rewritable(&a, &x) {
                    return Outcome::Vacuous;
                }
                if !sim.rewritable(&a, &y) {
                    return Outcome::Fail {
                        inputs: self.named(&[("a", &a)], &[("x", &x), ("y", &y)]),
                        expected: "rewritable(a, y) since rewritable(a, x) and x is a subsequence of y".into(),
                        actual: "simplify(a, y) = a".into(),
                    };
                }
                Outcome::Pass
            }
            Law::SimplifyAppend => {
                let a = self.element();
                let x = self.set();
                let y = self.set();
                if sim.rewritable(&a, &x) || sim.rewritable(&a, &y) {
                    return Outcome::Vacuous;
                }
                let xy: Vec<S::Element> = x.iter().chain(&y).cloned().collect();
                let r = sim.simplify(&a, &xy);
                if r != a {
                    return Outcome::Fail {
                        inputs: self.named(&[("a", &a)], &[("x", &x), ("y", &y)]),
                        expected: "simplify(a, x ++ y) = a".into(),
                        actual: format!("simplify(a, x ++ y) = {}", self.show(&r)),
                    };
                }
                Outcome::Pass
            }
            Law::CevalBoolean => {
                let x = self.element();
                let y = self.set();
                let r = sim.simplify(&x, &y);
                let interps = self.gen.interpretations(&mut self.rng);
                for e in std::iter::once(&x).chain(std::iter::once(&r)).chain(&y) {
                    for i in &interps {
                        if let Err(err) = sim.ceval(e, i) {
                            return Outcome::Fail {
                                inputs: vec![
                                    ("element".into(), self.show(e)),
                                    ("interpretation".into(), sim.render_interpretation(i)),
                                ],
                                expected: "a truth value".into(),
                                actual: err.to_string(),
                            };
                        }
                    }
                }
                Outcome::Pass
            }
            Law::TrueSymbolpCeval => {
                let x = self.element();
                let y = self.set();
                let r = sim.simplify(&x, &y);
                let interps = self.gen.interpretations(&mut self.rng);
                let candidates: Vec<&S::Element> = std::iter::once(&x)
                    .chain(std::iter::once(&r))
                    .chain(&y)
                    .filter(|e| sim.is_true_symbol(e))
                    .collect();
                if candidates.is_empty() {
                    return Outcome::Vacuous;
                }
                for e in candidates {
                    for i in &interps {
                        let v = sim.ceval(e, i);
                        if v != Ok(true) {
                            return Outcome::Fail {
                                inputs: vec![
                                    ("element".into(), self.show(e)),
                                    ("interpretation".into(), sim.render_interpretation(i)),
                                ],
                                expected: "true".into(),
                                actual: format!("{v:?}"),
                            };
                        }
                    }
                }
                Outcome::Pass
            }
            Law::SimplifySound => {
                let x = self.element();
                let y = self.set();
                let r = sim.simplify(&x, &y);
                let interps = self.gen.interpretations(&mut self.rng);
                let mut checked = false;
                for i in &interps {
                    if sim.ceval_list(&y, i) != Ok(true) {
                        continue;
                    }
                    checked = true;
                    let before = sim.ceval(&x, i);
                    let after = sim.ceval(&r, i);
                    if before != after {
                        let mut inputs = self.named(&[("x", &x), ("simplify(x, y)", &r)], &[("y", &y)]);
                        inputs.push(("interpretation".into(), sim.render_interpretation(i)));
                        return Outcome::Fail {
                            inputs,
                            expected: format!("ceval(simplify(x, y)) = {before:?}"),
                            actual: format!("ceval(simplify(x, y)) = {after:?}"),
                        };
                    }
                }
                if checked {
                    Outcome::Pass
                } else {
                    Outcome::Vacuous
                }
            }
        }
    }
}

fn run_case<S, G>(sim: &S, gen: &G, law: Law, seed: u64, case: u64) -> Outcome
where
    S: ElementFormat,
    G: Generator<Element = S::Element, Interp = S::Interp>,
{
    Case {
        sim,
        gen,
        rng: case_rng(seed, law.index() as u64, case),
    }
    .run(law)
}

/// Check one law on `iters` cases, stopping at the first counterexample.
pub fn check_law<S, G>(sim: &S, gen: &G, law: Law, seed: u64, iters: u64) -> LawReport
where
    S: ElementFormat,
    G: Generator<Element = S::Element, Interp = S::Interp>,
{
    let mut vacuous = 0;
    for case in 0..iters {
        match run_case(sim, gen, law, seed, case) {
            Outcome::Pass => {}
            Outcome::Vacuous => vacuous += 1,
            Outcome::Fail {
                inputs,
                expected,
                actual,
            } => {
                return LawReport {
                    law,
                    cases: case + 1,
                    vacuous,
                    counterexample: Some(Counterexample {
                        law,
                        seed,
                        case,
                        inputs,
                        expected,
                        actual,
                    }),
                }
            }
        }
    }
    LawReport {
        law,
        cases: iters,
        vacuous,
        counterexample: None,
    }
}

/// One report per law, in catalog order.
pub fn check_laws<S, G>(sim: &S, gen: &G, seed: u64, iters: u64) -> Vec<LawReport>
where
    S: ElementFormat,
    G: Generator<Element = S::Element, Interp = S::Interp>,
{
    Law::ALL
        .iter()
        .map(|&law| check_law(sim, gen, law, seed, iters))
        .collect()
}

/// Rerun a single case. Returns the counterexample if the case fails.
pub fn replay<S, G>(sim: &S, gen: &G, law: Law, seed: u64, case: u64) -> Option<Counterexample>
where
    S: ElementFormat,
    G: Generator<Element = S::Element, Interp = S::Interp>,
{
    match run_case(sim, gen, law, seed, case) {
        Outcome::Fail {
            inputs,
            expected,
            actual,
        } => Some(Counterexample {
            law,
            seed,
            case,
            inputs,
            expected,
            actual,
        }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clauses::UnitClauses;
    use crate::equations::GroundEquations;
    use crate::harness::{ClauseGen, EquationGen, Mutant, Mutation};

    #[test]
    fn reference_clauses_pass() {
        let reports = check_laws(&UnitClauses, &ClauseGen::default(), 1, 1000);
        assert_eq!(reports.len(), 8);
        for r in &reports {
            assert!(r.passed(), "{r}");
            assert_eq!(r.cases, 1000);
        }
    }

    #[test]
    fn reference_equations_pass() {
        let reports = check_laws(&GroundEquations, &EquationGen::default(), 7, 500);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn empty_sets_pass_vacuously() {
        let gen = ClauseGen {
            max_set_len: 0,
            ..ClauseGen::default()
        };
        assert!(check_laws(&UnitClauses, &gen, 3, 1).iter().all(LawReport::passed));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = check_laws(&UnitClauses, &ClauseGen::default(), 11, 200);
        let b = check_laws(&UnitClauses, &ClauseGen::default(), 11, 200);
        assert_eq!(a, b);
    }

    #[test]
    fn counterexample_replays() {
        let m = Mutant(Mutation::SingleStep);
        let gen = ClauseGen::default();
        let report = check_law(&m, &gen, Law::SimplifyIdempotent, 2, 1000);
        let cx = report.counterexample.expect("single-step mutant must be caught");
        assert_eq!(replay(&m, &gen, cx.law, cx.seed, cx.case), Some(cx.clone()));
        assert_eq!(replay(&UnitClauses, &gen, cx.law, cx.seed, cx.case), None);
        let json = serde_json::to_string(&cx).unwrap();
        assert!(json.contains("\"law\":\"simplify-idempotent\""));
    }
}
