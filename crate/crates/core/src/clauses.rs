//! Propositional clauses simplified by subsumption and unit resolution.
//!
//! File format: one clause per line, literals separated by whitespace, a
//! leading `-` negates an atom. `$T` alone is the TRUE clause and `$F` alone
//! is the empty clause.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::contract::{EvalError, Simplifier};
use crate::format::{content_lines, ElementFormat, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: String,
    /// Positive literals sort before negative ones on the same atom.
    pub negative: bool,
}

impl Literal {
    pub fn pos(atom: impl Into<String>) -> Self {
        Literal {
            atom: atom.into(),
            negative: false,
        }
    }

    pub fn neg(atom: impl Into<String>) -> Self {
        Literal {
            atom: atom.into(),
            negative: true,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            negative: !self.negative,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-{}", self.atom)
        } else {
            f.write_str(&self.atom)
        }
    }
}

/// A clause in canonical form: TRUE, or a sorted duplicate-free disjunction.
///
/// Tautologies such as `p -p` are kept as ordinary clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    True,
    Or(Vec<Literal>),
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Clause {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        Clause::Or(lits)
    }

    pub fn empty() -> Clause {
        Clause::Or(Vec::new())
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Clause::True)
    }

    /// Literals of a non-TRUE clause; TRUE has none.
    pub fn literals(&self) -> &[Literal] {
        match self {
            Clause::True => &[],
            Clause::Or(lits) => lits,
        }
    }

    pub fn unit(&self) -> Option<&Literal> {
        match self {
            Clause::Or(lits) if lits.len() == 1 => Some(&lits[0]),
            _ => None,
        }
    }

    /// `self ⊆ other` as literal sets. TRUE subsumes nothing and is subsumed
    /// by nothing.
    pub fn subsumes(&self, other: &Clause) -> bool {
        match (self, other) {
            (Clause::Or(small), Clause::Or(big)) => {
                small.len() <= big.len() && small.iter().all(|l| big.binary_search(l).is_ok())
            }
            _ => false,
        }
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.literals().binary_search(lit).is_ok()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.literals().iter().map(|l| l.atom.as_str())
    }

    fn without(&self, lit: &Literal) -> Clause {
        Clause::Or(self.literals().iter().filter(|l| *l != lit).cloned().collect())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::True => f.write_str("$T"),
            Clause::Or(lits) if lits.is_empty() => f.write_str("$F"),
            Clause::Or(lits) => {
                for (i, l) in lits.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{l}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for Clause {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_clause(s, 1)
    }
}

fn valid_atom(atom: &str) -> bool {
    !atom.is_empty()
        && atom
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.'))
}

/// Parse one clause line. `line` is only used for error positions.
pub fn parse_clause(text: &str, line: usize) -> Result<Clause, ParseError> {
    let mut tokens = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        tokens.push((offset + start + 1, &tail[..len]));
        offset += start + len;
        rest = &tail[len..];
    }

    let special = |tok: &str| tok == "$T" || tok == "$F";
    if let Some(&(col, tok)) = tokens.iter().find(|(_, t)| special(t)) {
        if tokens.len() > 1 {
            return Err(ParseError::new(
                line,
                col,
                format!("`{tok}` must appear alone on its line"),
            ));
        }
        return Ok(if tok == "$T" { Clause::True } else { Clause::empty() });
    }
    if tokens.is_empty() {
        return Err(ParseError::new(line, 1, "empty clause line (write `$F`)"));
    }

    let mut lits = Vec::with_capacity(tokens.len());
    for (col, tok) in tokens {
        let (negative, atom) = match tok.strip_prefix('-') {
            Some(a) => (true, a),
            None => (false, tok),
        };
        if !valid_atom(atom) {
            return Err(ParseError::new(line, col, format!("malformed literal `{tok}`")));
        }
        lits.push(Literal {
            atom: atom.to_string(),
            negative,
        });
    }
    Ok(Clause::new(lits))
}

/// A total assignment over a declared atom universe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    values: BTreeMap<String, bool>,
}

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) -> &mut Self {
        self.values.insert(atom.into(), value);
        self
    }

    pub fn with(mut self, atom: impl Into<String>, value: bool) -> Self {
        self.set(atom, value);
        self
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.values.get(atom).copied()
    }

    pub fn universe(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for Valuation {
    /// Written like a clause of the literals it makes true.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, &v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if !v {
                f.write_str("-")?;
            }
            f.write_str(atom)?;
        }
        Ok(())
    }
}

/// Evaluate a clause as a disjunction. Every atom of `c` must be in the
/// valuation's universe.
pub fn clause_eval(c: &Clause, v: &Valuation) -> Result<bool, EvalError> {
    let lits = match c {
        Clause::True => return Ok(true),
        Clause::Or(lits) => lits,
    };
    let mut sat = false;
    for l in lits {
        let value = v.get(&l.atom).ok_or_else(|| EvalError::UnknownAtom(l.atom.clone()))?;
        sat |= value != l.negative;
    }
    Ok(sat)
}

/// Simplify `c` by `y` to a fixpoint.
///
/// Each pass first looks for a subsuming member of `y` (result TRUE), then
/// for the first unit `{L}` in `y` whose complement occurs in the clause,
/// which is removed.
pub fn unit_simplify(c: &Clause, y: &[Clause]) -> Clause {
    let mut cur = c.clone();
    loop {
        if cur.is_true() {
            return cur;
        }
        if y.iter().any(|d| d.subsumes(&cur)) {
            return Clause::True;
        }
        let resolved = y
            .iter()
            .filter_map(Clause::unit)
            .map(Literal::complement)
            .find(|neg| cur.contains(neg));
        match resolved {
            Some(neg) => cur = cur.without(&neg),
            None => return cur,
        }
    }
}

/// The reference clause theory.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitClauses;

impl Simplifier for UnitClauses {
    type Element = Clause;
    type Interp = Valuation;

    fn simplify(&self, x: &Clause, y: &[Clause]) -> Clause {
        unit_simplify(x, y)
    }

    fn is_true_symbol(&self, x: &Clause) -> bool {
        x.is_true()
    }

    fn ceval(&self, x: &Clause, i: &Valuation) -> Result<bool, EvalError> {
        clause_eval(x, i)
    }

    fn scount(&self, x: &Clause) -> i64 {
        match x {
            Clause::True => 0,
            Clause::Or(lits) => 1 + lits.len() as i64,
        }
    }
}

impl ElementFormat for UnitClauses {
    fn parse_set(&self, text: &str) -> Result<Vec<Clause>, ParseError> {
        content_lines(text)
            .map(|(line, indent, l)| {
                parse_clause(l, line).map_err(|mut e| {
                    e.column += indent;
                    e
                })
            })
            .collect()
    }

    fn render(&self, e: &Clause) -> String {
        e.to_string()
    }

    fn render_interpretation(&self, i: &Valuation) -> String {
        i.to_string()
    }
}

/// Parse a valuation written as literals, e.g. `p -q r`.
pub fn parse_valuation(text: &str) -> Result<Valuation, ParseError> {
    let mut v = Valuation::new();
    if text.trim().is_empty() {
        return Ok(v);
    }
    match parse_clause(text, 1)? {
        Clause::True => Err(ParseError::new(1, 1, "`$T` is not a valuation")),
        Clause::Or(lits) => {
            for l in lits {
                if v.get(&l.atom).is_some() {
                    return Err(ParseError::new(1, 1, format!("atom `{}` assigned twice", l.atom)));
                }
                v.set(l.atom, !l.negative);
            }
            Ok(v)
        }
    }
}

/// Sorted union of the atoms occurring in `sets`.
pub fn atoms_of<'a>(sets: impl IntoIterator<Item = &'a [Clause]>) -> Vec<String> {
    let mut atoms = BTreeSet::new();
    for s in sets {
        for c in s {
            atoms.extend(c.atoms().map(str::to_string));
        }
    }
    atoms.into_iter().collect()
}
