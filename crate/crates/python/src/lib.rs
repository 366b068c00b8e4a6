//! Python bindings: element types, the two reference theories, and the
//! incorporation procedures.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::incorp::clauses::{self, Valuation};
use ::incorp::equations::{self, parse_algebra};
use ::incorp::harness::{check_laws, ClauseGen, EquationGen, LawReport};
use ::incorp::{irreducible_list, ElementFormat, IncorporationStats, Mode, Simplifier};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(value_error)
}

/// Counters collected during one incorporation run.
#[pyclass(frozen, get_all, module = "incorp")]
struct Stats {
    iterations: u64,
    true_discards: u64,
    back_simplifications: u64,
    empty_extractions: u64,
    nonempty_extractions: u64,
    measure_trace: Vec<(u64, u64)>,
}

#[pymethods]
impl Stats {
    fn __repr__(&self) -> String {
        format!(
            "Stats(iterations={}, true_discards={}, back_simplifications={}, empty_extractions={}, nonempty_extractions={})",
            self.iterations, self.true_discards, self.back_simplifications, self.empty_extractions, self.nonempty_extractions
        )
    }
}

impl From<IncorporationStats> for Stats {
    fn from(s: IncorporationStats) -> Self {
        Stats {
            iterations: s.iterations,
            true_discards: s.true_discards,
            back_simplifications: s.back_simplifications,
            empty_extractions: s.empty_extractions,
            nonempty_extractions: s.nonempty_extractions,
            measure_trace: s.measure_trace.iter().map(|m| (m.first, m.second)).collect(),
        }
    }
}

/// Outcome of checking one contract law.
#[pyclass(frozen, get_all, module = "incorp")]
struct LawResult {
    law: String,
    cases: u64,
    vacuous: u64,
    passed: bool,
    report: String,
}

#[pymethods]
impl LawResult {
    fn __repr__(&self) -> String {
        format!(
            "LawResult(law={:?}, cases={}, passed={})",
            self.law, self.cases, self.passed
        )
    }
}

impl From<LawReport> for LawResult {
    fn from(r: LawReport) -> Self {
        LawResult {
            law: r.law.name().to_string(),
            cases: r.cases,
            vacuous: r.vacuous,
            passed: r.passed(),
            report: r.to_string(),
        }
    }
}

/// Wraps an element type and a theory type around one reference simplifier.
/// The trailing blocks hold methods specific to the element and the theory.
macro_rules! theory {
    (
        $elem:ident($inner:ty), $theory:ident = $sim:expr, gen = $gen:expr, parse = $parse_one:path,
        { $($elem_extra:tt)* } { $($theory_extra:tt)* }
    ) => {
        #[pyclass(frozen, eq, hash, from_py_object, module = "incorp")]
        #[derive(Clone, PartialEq, Eq, Hash)]
        struct $elem($inner);

        #[pymethods]
        impl $elem {
            #[new]
            fn new(text: &str) -> PyResult<Self> {
                $parse_one(text, 1).map($elem).map_err(value_error)
            }

            fn is_true(&self) -> bool {
                $sim.is_true_symbol(&self.0)
            }

            fn scount(&self) -> i64 {
                $sim.scount(&self.0)
            }

            fn __str__(&self) -> String {
                $sim.render(&self.0)
            }

            fn __repr__(&self) -> String {
                format!("{}({:?})", stringify!($elem), $sim.render(&self.0))
            }

            $($elem_extra)*
        }

        fn unwrap_set(set: Vec<$elem>) -> Vec<$inner> {
            set.into_iter().map(|e| e.0).collect()
        }

        fn wrap_set(set: Vec<$inner>) -> Vec<$elem> {
            set.into_iter().map($elem).collect()
        }

        #[pyclass(frozen, module = "incorp")]
        struct $theory;

        #[pymethods]
        impl $theory {
            #[new]
            fn new() -> Self {
                $theory
            }

            /// Parse a file's worth of elements, one per line.
            fn parse(&self, text: &str) -> PyResult<Vec<$elem>> {
                $sim.parse_set(text).map(wrap_set).map_err(value_error)
            }

            fn render(&self, set: Vec<$elem>) -> String {
                $sim.render_set(&unwrap_set(set))
            }

            fn simplify(&self, x: &$elem, by: Vec<$elem>) -> $elem {
                $elem($sim.simplify(&x.0, &unwrap_set(by)))
            }

            fn rewritable(&self, x: &$elem, by: Vec<$elem>) -> bool {
                $sim.rewritable(&x.0, &unwrap_set(by))
            }

            fn irreducible(&self, db: Vec<$elem>) -> bool {
                irreducible_list(&$sim, &unwrap_set(db))
            }

            /// Incorporate `new` into `db`; returns the final database and
            /// the run statistics.
            #[pyo3(signature = (new, db, mode = "direct"))]
            fn incorporate(&self, new: Vec<$elem>, db: Vec<$elem>, mode: &str) -> PyResult<(Vec<$elem>, Stats)> {
                let result = ::incorp::incorporate(&$sim, parse_mode(mode)?, &unwrap_set(new), &unwrap_set(db));
                Ok((wrap_set(result.final_db), result.stats.into()))
            }

            #[pyo3(signature = (seed = 1, iters = 1000))]
            fn conform(&self, seed: u64, iters: u64) -> Vec<LawResult> {
                check_laws(&$sim, &$gen, seed, iters).into_iter().map(LawResult::from).collect()
            }

            $($theory_extra)*
        }

        pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
            m.add_class::<$elem>()?;
            m.add_class::<$theory>()
        }
    };
}

mod clause_theory {
    use super::*;

    theory!(
        Clause(clauses::Clause), UnitClauses = clauses::UnitClauses, gen = ClauseGen::default(),
        parse = clauses::parse_clause,
        {
            /// Literals as strings, negative ones prefixed with `-`.
            fn literals(&self) -> Vec<String> {
                self.0.literals().iter().map(ToString::to_string).collect()
            }
        }
        {
            /// Truth value of `x` under a mapping from atom names to booleans.
            fn ceval(&self, x: &Clause, valuation: BTreeMap<String, bool>) -> PyResult<bool> {
                let v = valuation.into_iter().fold(Valuation::new(), |v, (a, b)| v.with(a, b));
                clauses::UnitClauses.ceval(&x.0, &v).map_err(value_error)
            }
        }
    );
}

mod equation_theory {
    use super::*;

    theory!(
        Equation(equations::Equation), GroundEquations = equations::GroundEquations, gen = EquationGen::default(),
        parse = equations::parse_equation,
        {
            /// The two sides as strings, or `None` for TRUE.
            fn sides(&self) -> Option<(String, String)> {
                self.0.sides().map(|(l, r)| (l.to_string(), r.to_string()))
            }
        }
        {
            /// Truth value of `x` in the algebra given in the text format
            /// accepted by the command-line tool.
            fn ceval(&self, x: &Equation, algebra: &str) -> PyResult<bool> {
                let alg = parse_algebra(algebra).map_err(value_error)?;
                equations::GroundEquations.ceval(&x.0, &alg).map_err(value_error)
            }
        }
    );
}

#[pymodule(name = "incorp")]
fn incorp_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Stats>()?;
    m.add_class::<LawResult>()?;
    clause_theory::register(m)?;
    equation_theory::register(m)
}
