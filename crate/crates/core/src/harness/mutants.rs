//! Deliberately broken clause simplifiers, one per contract law.
//!
//! Each mutant differs from [`UnitClauses`] in exactly one place and violates
//! the law returned by [`Mutation::target`]. The conformance harness must
//! catch every one of them.

use crate::clauses::{clause_eval, unit_simplify, Clause, Literal, UnitClauses, Valuation};
use crate::contract::{EvalError, Law, Simplifier};
use crate::format::{ElementFormat, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// scount is shifted down by one, so TRUE measures -1.
    NegativeScount,
    /// scount is constant, so no simplification shrinks anything.
    FlatScount,
    /// Only a single subsume-or-resolve step is taken, no fixpoint.
    SingleStep,
    /// Sets with more than three members simplify nothing.
    SmallSetsOnly,
    /// Unit resolution only fires when the set holds two or more units.
    NeedsTwoUnits,
    /// The empty clause has no truth value.
    EmptyClauseUndefined,
    /// TRUE evaluates to false.
    TrueEvaluatesFalse,
    /// A clause contained in a set member is also reduced to TRUE.
    ReverseSubsumption,
}

impl Mutation {
    pub const ALL: [Mutation; 8] = [
        Mutation::NegativeScount,
        Mutation::FlatScount,
        Mutation::SingleStep,
        Mutation::SmallSetsOnly,
        Mutation::NeedsTwoUnits,
        Mutation::EmptyClauseUndefined,
        Mutation::TrueEvaluatesFalse,
        Mutation::ReverseSubsumption,
    ];

    /// The law this mutant breaks.
    pub fn target(self) -> Law {
        match self {
            Mutation::NegativeScount => Law::ScountNatural,
            Mutation::FlatScount => Law::ScountSimplify,
            Mutation::SingleStep => Law::SimplifyIdempotent,
            Mutation::SmallSetsOnly => Law::SimplifySubset,
            Mutation::NeedsTwoUnits => Law::SimplifyAppend,
            Mutation::EmptyClauseUndefined => Law::CevalBoolean,
            Mutation::TrueEvaluatesFalse => Law::TrueSymbolpCeval,
            Mutation::ReverseSubsumption => Law::SimplifySound,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Mutant(pub Mutation);

fn single_step(c: &Clause, y: &[Clause]) -> Clause {
    if c.is_true() {
        return Clause::True;
    }
    if y.iter().any(|d| d.subsumes(c)) {
        return Clause::True;
    }
    let hit = y
        .iter()
        .filter_map(Clause::unit)
        .map(Literal::complement)
        .find(|neg| c.contains(neg));
    match hit {
        Some(neg) => Clause::new(c.literals().iter().filter(|l| **l != neg).cloned()),
        None => c.clone(),
    }
}

fn simplify_with(c: &Clause, y: &[Clause], resolve: bool, reverse: bool) -> Clause {
    let mut cur = c.clone();
    loop {
        if cur.is_true() {
            return cur;
        }
        if y.iter().any(|d| d.subsumes(&cur) || (reverse && cur.subsumes(d))) {
            return Clause::True;
        }
        if !resolve {
            return cur;
        }
        let hit = y
            .iter()
            .filter_map(Clause::unit)
            .map(Literal::complement)
            .find(|neg| cur.contains(neg));
        match hit {
            Some(neg) => cur = Clause::new(cur.literals().iter().filter(|l| **l != neg).cloned()),
            None => return cur,
        }
    }
}

impl Simplifier for Mutant {
    type Element = Clause;
    type Interp = Valuation;

    fn simplify(&self, x: &Clause, y: &[Clause]) -> Clause {
        match self.0 {
            Mutation::SingleStep => single_step(x, y),
            Mutation::SmallSetsOnly if y.len() > 3 => x.clone(),
            Mutation::NeedsTwoUnits => {
                let units = y.iter().filter(|d| d.unit().is_some()).count();
                simplify_with(x, y, units >= 2, false)
            }
            Mutation::ReverseSubsumption => simplify_with(x, y, true, true),
            _ => unit_simplify(x, y),
        }
    }

    fn is_true_symbol(&self, x: &Clause) -> bool {
        x.is_true()
    }

    fn ceval(&self, x: &Clause, i: &Valuation) -> Result<bool, EvalError> {
        match (self.0, x) {
            (Mutation::EmptyClauseUndefined, Clause::Or(lits)) if lits.is_empty() => {
                Err(EvalError::Indeterminate("empty clause".into()))
            }
            (Mutation::TrueEvaluatesFalse, Clause::True) => Ok(false),
            _ => clause_eval(x, i),
        }
    }

    fn scount(&self, x: &Clause) -> i64 {
        match self.0 {
            Mutation::NegativeScount => UnitClauses.scount(x) - 1,
            Mutation::FlatScount => 1,
            _ => UnitClauses.scount(x),
        }
    }
}

impl ElementFormat for Mutant {
    fn parse_set(&self, text: &str) -> Result<Vec<Clause>, ParseError> {
        UnitClauses.parse_set(text)
    }

    fn render(&self, e: &Clause) -> String {
        UnitClauses.render(e)
    }

    fn render_interpretation(&self, i: &Valuation) -> String {
        UnitClauses.render_interpretation(i)
    }
}
