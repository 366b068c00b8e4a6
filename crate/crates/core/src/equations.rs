//! Ground equations simplified by size-decreasing rewriting.
//!
//! An equation is kept in canonical orientation: the larger side (by symbol
//! count, ties broken by the derived term order) is the left-hand side. Only
//! equations whose lhs is strictly larger than their rhs act as rewrite
//! rules; equal-size equations sit in the database inert.
//!
//! File format: one s-expression per line, `(= term term)` where a term is a
//! symbol or `(sym term ...)`. `$T` is the TRUE equation.

use std::collections::BTreeMap;
use std::fmt;

use crate::contract::{EvalError, Simplifier};
use crate::format::{content_lines, ElementFormat, ParseError};

/// Symbol name to arity.
pub type Signature = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub sym: String,
    pub args: Vec<Term>,
}

impl Term {
    pub fn constant(sym: impl Into<String>) -> Term {
        Term {
            sym: sym.into(),
            args: Vec::new(),
        }
    }

    pub fn app(sym: impl Into<String>, args: Vec<Term>) -> Term {
        Term { sym: sym.into(), args }
    }

    /// Symbol count.
    pub fn size(&self) -> usize {
        1 + self.args.iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    fn collect_signature(&self, sig: &mut Vec<(String, usize)>) {
        sig.push((self.sym.clone(), self.args.len()));
        for a in &self.args {
            a.collect_signature(sig);
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            return f.write_str(&self.sym);
        }
        write!(f, "({}", self.sym)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

fn orientation_key(t: &Term) -> (usize, &Term) {
    (t.size(), t)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    True,
    Eq { lhs: Term, rhs: Term },
}

impl Equation {
    /// Canonical equation between two terms; identical sides give TRUE.
    pub fn new(a: Term, b: Term) -> Equation {
        if a == b {
            return Equation::True;
        }
        if orientation_key(&a) > orientation_key(&b) {
            Equation::Eq { lhs: a, rhs: b }
        } else {
            Equation::Eq { lhs: b, rhs: a }
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Equation::True)
    }

    pub fn sides(&self) -> Option<(&Term, &Term)> {
        match self {
            Equation::True => None,
            Equation::Eq { lhs, rhs } => Some((lhs, rhs)),
        }
    }

    /// The equation as a rewrite rule, if its lhs is strictly larger.
    pub fn as_rule(&self) -> Option<(&Term, &Term)> {
        self.sides().filter(|(l, r)| l.size() > r.size())
    }

    pub fn symbol_count(&self) -> usize {
        self.sides().map_or(0, |(l, r)| l.size() + r.size())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::True => f.write_str("$T"),
            Equation::Eq { lhs, rhs } => write!(f, "(= {lhs} {rhs})"),
        }
    }
}

impl std::str::FromStr for Equation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_equation(s, 1)
    }
}

/// Normal form of `t` under the usable rules of `rules`, innermost-leftmost,
/// first applicable rule in set order.
pub fn normalize(t: &Term, rules: &[Equation]) -> Term {
    normalize_counted(t, rules).0
}

/// Like [`normalize`], also returning the number of rewrite steps taken.
pub fn normalize_counted(t: &Term, rules: &[Equation]) -> (Term, usize) {
    let usable: Vec<(&Term, &Term)> = rules.iter().filter_map(Equation::as_rule).collect();
    let mut steps = 0;
    let nf = normalize_with(t, &usable, &mut steps);
    (nf, steps)
}

fn normalize_with(t: &Term, rules: &[(&Term, &Term)], steps: &mut usize) -> Term {
    let args = t.args.iter().map(|a| normalize_with(a, rules, steps)).collect();
    let t = Term {
        sym: t.sym.clone(),
        args,
    };
    match rules.iter().find(|(lhs, _)| **lhs == t) {
        Some((_, rhs)) => {
            *steps += 1;
            normalize_with(rhs, rules, steps)
        }
        None => t,
    }
}

pub fn eq_simplify(e: &Equation, y: &[Equation]) -> Equation {
    let (lhs, rhs) = match e.sides() {
        None => return Equation::True,
        Some(s) => s,
    };
    let (l, lsteps) = normalize_counted(lhs, y);
    let (r, rsteps) = normalize_counted(rhs, y);
    if lsteps == 0 && rsteps == 0 {
        return e.clone();
    }
    Equation::new(l, r)
}

/// A finite algebra: a carrier `{0, .., n-1}` and one total operation table
/// per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    carrier: usize,
    ops: BTreeMap<String, Operation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Operation {
    arity: usize,
    /// Row-major over argument tuples.
    table: Vec<usize>,
}

impl FiniteAlgebra {
    pub fn new(carrier: usize) -> Self {
        assert!(carrier >= 1, "carrier must be non-empty");
        FiniteAlgebra {
            carrier,
            ops: BTreeMap::new(),
        }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    /// Install an operation table of `carrier^arity` entries.
    pub fn define(&mut self, sym: impl Into<String>, arity: usize, table: Vec<usize>) -> &mut Self {
        let sym = sym.into();
        assert_eq!(
            table.len(),
            self.carrier.pow(arity as u32),
            "table for `{sym}` has wrong length"
        );
        assert!(table.iter().all(|&v| v < self.carrier), "table value out of carrier");
        self.ops.insert(sym, Operation { arity, table });
        self
    }

    pub fn with(mut self, sym: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        self.define(sym, arity, table);
        self
    }

    pub fn signature(&self) -> Signature {
        self.ops.iter().map(|(s, op)| (s.clone(), op.arity)).collect()
    }

    pub fn eval_term(&self, t: &Term) -> Result<usize, EvalError> {
        let op = self
            .ops
            .get(&t.sym)
            .filter(|op| op.arity == t.args.len())
            .ok_or_else(|| EvalError::UnknownSymbol {
                symbol: t.sym.clone(),
                arity: t.args.len(),
            })?;
        let mut index = 0;
        for a in &t.args {
            index = index * self.carrier + self.eval_term(a)?;
        }
        Ok(op.table[index])
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "carrier {}", self.carrier)?;
        for (sym, op) in &self.ops {
            if op.arity == 0 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}/{}", op.arity)?;
            }
            for v in &op.table {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parse an algebra file:
///
/// ```text
/// carrier 2
/// a 0
/// f/1 1 0
/// g/2 0 1 1 0
/// ```
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, ParseError> {
    let mut lines = content_lines(text);
    let (line, _, first) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing `carrier N` line"))?;
    let carrier = first
        .strip_prefix("carrier")
        .and_then(|n| n.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| ParseError::new(line, 1, "expected `carrier N` with N >= 1"))?;
    let mut alg = FiniteAlgebra::new(carrier);
    for (line, indent, l) in lines {
        let mut toks = l.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let (sym, arity) = match head.split_once('/') {
            Some((s, a)) => (
                s,
                a.parse::<usize>()
                    .map_err(|_| ParseError::new(line, indent + 1, format!("bad arity in `{head}`")))?,
            ),
            None => (head, 0),
        };
        if !valid_symbol(sym) {
            return Err(ParseError::new(line, indent + 1, format!("bad symbol `{sym}`")));
        }
        if alg.ops.contains_key(sym) {
            return Err(ParseError::new(
                line,
                indent + 1,
                format!("symbol `{sym}` defined twice"),
            ));
        }
        let table = toks
            .map(|t| t.parse::<usize>().ok().filter(|&v| v < carrier))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| ParseError::new(line, indent + 1, "table values must be carrier elements"))?;
        if table.len() != carrier.pow(arity as u32) {
            return Err(ParseError::new(
                line,
                indent + 1,
                format!(
                    "`{sym}` needs {} table entries, found {}",
                    carrier.pow(arity as u32),
                    table.len()
                ),
            ));
        }
        alg.define(sym, arity, table);
    }
    Ok(alg)
}

pub fn eq_eval(e: &Equation, alg: &FiniteAlgebra) -> Result<bool, EvalError> {
    match e.sides() {
        None => Ok(true),
        Some((l, r)) => Ok(alg.eval_term(l)? == alg.eval_term(r)?),
    }
}

/// The reference rewriting theory.
#[derive(Debug, Clone, Copy, Default)]
pub struct GroundEquations;

impl Simplifier for GroundEquations {
    type Element = Equation;
    type Interp = FiniteAlgebra;

    fn simplify(&self, x: &Equation, y: &[Equation]) -> Equation {
        eq_simplify(x, y)
    }

    fn is_true_symbol(&self, x: &Equation) -> bool {
        x.is_true()
    }

    fn ceval(&self, x: &Equation, i: &FiniteAlgebra) -> Result<bool, EvalError> {
        eq_eval(x, i)
    }

    fn scount(&self, x: &Equation) -> i64 {
        x.symbol_count() as i64
    }
}

impl ElementFormat for GroundEquations {
    fn parse_set(&self, text: &str) -> Result<Vec<Equation>, ParseError> {
        let mut arities: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        let mut out = Vec::new();
        for (line, indent, l) in content_lines(text) {
            let e = parse_equation(l, line).map_err(|mut err| {
                err.column += indent;
                err
            })?;
            if let Some((lhs, rhs)) = e.sides() {
                let mut sig = Vec::new();
                lhs.collect_signature(&mut sig);
                rhs.collect_signature(&mut sig);
                for (sym, arity) in sig {
                    match arities.get(&sym) {
                        Some(&(prev, prev_line)) if prev != arity => {
                            return Err(ParseError::new(
                                line,
                                indent + 1,
                                format!(
                                    "symbol `{sym}` used with arity {arity}, but with arity {prev} on line {prev_line}"
                                ),
                            ))
                        }
                        Some(_) => {}
                        None => {
                            arities.insert(sym, (arity, line));
                        }
                    }
                }
            }
            out.push(e);
        }
        Ok(out)
    }

    fn render(&self, e: &Equation) -> String {
        e.to_string()
    }

    fn render_interpretation(&self, i: &FiniteAlgebra) -> String {
        i.to_string()
    }
}

/// Symbols and arities occurring in `sets`; conflicting arities are an error.
pub fn signature_of<'a>(sets: impl IntoIterator<Item = &'a [Equation]>) -> Result<Signature, String> {
    let mut sig = Signature::new();
    for s in sets {
        for e in s {
            let mut found = Vec::new();
            if let Some((l, r)) = e.sides() {
                l.collect_signature(&mut found);
                r.collect_signature(&mut found);
            }
            for (sym, arity) in found {
                if let Some(&prev) = sig.get(&sym) {
                    if prev != arity {
                        return Err(format!("symbol `{sym}` used with arities {prev} and {arity}"));
                    }
                }
                sig.insert(sym, arity);
            }
        }
    }
    Ok(sig)
}

fn valid_symbol(s: &str) -> bool {
    !s.is_empty()
        && s != "="
        && !s.starts_with('$')
        && s.chars()
            .all(|c| !c.is_whitespace() && c != '(' && c != ')' && c != '#')
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Sym(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'(' {
            out.push((i + 1, Token::Open));
            i += 1;
        } else if c == b')' {
            out.push((i + 1, Token::Close));
            i += 1;
        } else {
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                i += 1;
            }
            out.push((start + 1, Token::Sym(&text[start..i])));
        }
    }
    out
}

struct TermParser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> TermParser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        let col = self.tokens.get(self.pos).map_or(self.end_col, |(c, _)| *c);
        ParseError::new(self.line, col, msg)
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn expect(&mut self, want: Token<'a>, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn symbol(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token::Sym(s)) if valid_symbol(s) => {
                let s = s.to_string();
                self.pos += 1;
                Ok(s)
            }
            Some(Token::Sym(s)) => Err(self.err(format!("invalid symbol `{s}`"))),
            _ => Err(self.err("expected a symbol")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Token::Open) => {
                self.pos += 1;
                let sym = self.symbol()?;
                let mut args = Vec::new();
                while !matches!(self.peek(), Some(Token::Close) | None) {
                    args.push(self.term()?);
                }
                if args.is_empty() {
                    return Err(self.err(format!("application of `{sym}` has no arguments")));
                }
                self.expect(Token::Close, "`)`")?;
                Ok(Term::app(sym, args))
            }
            Some(Token::Sym(_)) => Ok(Term::constant(self.symbol()?)),
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parse `(= term term)` or `$T`. `line` is only used for error positions.
pub fn parse_equation(text: &str, line: usize) -> Result<Equation, ParseError> {
    if text.trim() == "$T" {
        return Ok(Equation::True);
    }
    let mut p = TermParser {
        tokens: tokenize(text),
        pos: 0,
        line,
        end_col: text.len() + 1,
    };
    p.expect(Token::Open, "`(`")?;
    p.expect(Token::Sym("="), "`=`")?;
    let a = p.term()?;
    let b = p.term()?;
    p.expect(Token::Close, "`)`")?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input after equation"));
    }
    Ok(Equation::new(a, b))
}

/// Parse a single term, e.g. `(f (g a b))`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = TermParser {
        tokens: tokenize(text),
        pos: 0,
        line: 1,
        end_col: text.len() + 1,
    };
    let t = p.term()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}
