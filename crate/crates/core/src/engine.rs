//! Direct and limbo incorporation of a new element list into a database.
//!
//! Both main loops carry a lexicographic termination measure
//! `(1 + lcount(queue) + lcount(db), 1 + lcount(queue))` that is recorded at
//! every iteration and asserted to strictly decrease. A conforming simplifier
//! guarantees the decrease; a non-conforming one trips the assertion with a
//! dump of the loop state.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::contract::Simplifier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MeasurePair {
    pub first: u64,
    pub second: u64,
}

impl fmt::Display for MeasurePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncorporationStats {
    /// Main-loop iterations.
    pub iterations: u64,
    /// Elements dropped because they simplified to TRUE, in either stage.
    pub true_discards: u64,
    /// Database elements pulled out by a newly kept element.
    pub back_simplifications: u64,
    /// Iterations that kept an element and extracted nothing from the db.
    pub empty_extractions: u64,
    /// Iterations that kept an element and extracted at least one db member.
    pub nonempty_extractions: u64,
    pub measure_trace: Vec<MeasurePair>,
}

impl IncorporationStats {
    /// Whether the run went through both an empty and a non-empty extraction.
    pub fn exercised_both_cases(&self) -> bool {
        self.empty_extractions > 0 && self.nonempty_extractions > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncorporationResult<E> {
    pub final_db: Vec<E>,
    pub stats: IncorporationStats,
}

/// Incorporation procedure selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Direct,
    Limbo,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Mode::Direct),
            "limbo" => Ok(Mode::Limbo),
            other => Err(format!("unknown mode `{other}` (expected direct or limbo)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Direct => "direct",
            Mode::Limbo => "limbo",
        })
    }
}

/// Sum over members of `1 + scount(member)`.
///
/// Panics if the simplifier reports a negative size.
pub fn lcount<S: Simplifier>(sim: &S, x: &[S::Element]) -> u64 {
    x.iter().map(|e| 1 + natural_scount(sim, e)).sum()
}

fn natural_scount<S: Simplifier>(sim: &S, e: &S::Element) -> u64 {
    let n = sim.scount(e);
    u64::try_from(n).unwrap_or_else(|_| panic!("scount({e:?}) = {n} is not a natural number"))
}

fn measure<'a, S, Q>(sim: &S, queue: Q, db: &[S::Element]) -> MeasurePair
where
    S: Simplifier,
    S::Element: 'a,
    Q: IntoIterator<Item = &'a S::Element>,
{
    let q: u64 = queue.into_iter().map(|e| 1 + natural_scount(sim, e)).sum();
    MeasurePair {
        first: 1 + q + lcount(sim, db),
        second: 1 + q,
    }
}

/// Appends `next` to the trace, panicking with a state dump unless it is
/// strictly below the previous entry.
fn record<E: fmt::Debug>(trace: &mut Vec<MeasurePair>, next: MeasurePair, queue: &VecDeque<E>, db: &[E]) {
    if let Some(&prev) = trace.last() {
        assert!(
            next < prev,
            "termination measure did not decrease: {prev} -> {next}\nqueue: {queue:?}\ndb: {db:?}"
        );
    }
    trace.push(next);
}

/// Members of `s` rewritable by `[x]`, in order.
pub fn extract_rewritables<S: Simplifier>(sim: &S, x: &S::Element, s: &[S::Element]) -> Vec<S::Element> {
    let by = std::slice::from_ref(x);
    s.iter().filter(|d| sim.rewritable(d, by)).cloned().collect()
}

/// Members of `s` rewritable by `[x]`, each simplified by `[x]`.
pub fn extract_and_simplify_rewritables<S: Simplifier>(sim: &S, x: &S::Element, s: &[S::Element]) -> Vec<S::Element> {
    let by = std::slice::from_ref(x);
    s.iter()
        .filter_map(|d| {
            let r = sim.simplify(d, by);
            (r != *d).then_some(r)
        })
        .collect()
}

/// Members of `s` not rewritable by `[x]`, in order.
pub fn remove_rewritables<S: Simplifier>(sim: &S, x: &S::Element, s: &[S::Element]) -> Vec<S::Element> {
    let by = std::slice::from_ref(x);
    s.iter().filter(|d| !sim.rewritable(d, by)).cloned().collect()
}

/// Incorporate `q` into `s` one element at a time, moving every db member the
/// newly kept element rewrites back onto the queue (already simplified by it).
pub fn direct_incorporate<S: Simplifier>(
    sim: &S,
    q: &[S::Element],
    s: &[S::Element],
) -> IncorporationResult<S::Element> {
    let mut queue: VecDeque<S::Element> = q.iter().cloned().collect();
    let mut db: Vec<S::Element> = s.to_vec();
    let mut stats = IncorporationStats::default();

    loop {
        record(&mut stats.measure_trace, measure(sim, &queue, &db), &queue, &db);
        let Some(head) = queue.pop_front() else {
            break;
        };
        stats.iterations += 1;
        let c = sim.simplify(&head, &db);
        if sim.is_true_symbol(&c) {
            stats.true_discards += 1;
            continue;
        }
        let moved = extract_and_simplify_rewritables(sim, &c, &db);
        let keep = remove_rewritables(sim, &c, &db);
        tally_extraction(&mut stats, moved.len());
        queue.extend(moved);
        db = std::iter::once(c).chain(keep).collect();
    }

    IncorporationResult { final_db: db, stats }
}

fn tally_extraction(stats: &mut IncorporationStats, n: usize) {
    if n == 0 {
        stats.empty_extractions += 1;
    } else {
        stats.nonempty_extractions += 1;
        stats.back_simplifications += n as u64;
    }
}

/// Simplify `x` by `s ++ l`; append the result to `l` unless it is TRUE.
pub fn preprocess<S: Simplifier>(sim: &S, x: &S::Element, s: &[S::Element], l: &[S::Element]) -> Vec<S::Element> {
    let mut out = l.to_vec();
    preprocess_into(sim, x, s, &mut out);
    out
}

/// In-place [`preprocess`]; returns whether the element was discarded.
fn preprocess_into<S: Simplifier>(sim: &S, x: &S::Element, s: &[S::Element], l: &mut Vec<S::Element>) -> bool {
    let by: Vec<S::Element> = s.iter().chain(l.iter()).cloned().collect();
    let r = sim.simplify(x, &by);
    if sim.is_true_symbol(&r) {
        true
    } else {
        l.push(r);
        false
    }
}

/// Forward-simplify every member of `q` by `s` and the limbo list built so
/// far. `s` is not modified.
pub fn initial_limbo<S: Simplifier>(sim: &S, q: &[S::Element], s: &[S::Element]) -> Vec<S::Element> {
    initial_limbo_counted(sim, q, s, &mut IncorporationStats::default())
}

fn initial_limbo_counted<S: Simplifier>(
    sim: &S,
    q: &[S::Element],
    s: &[S::Element],
    stats: &mut IncorporationStats,
) -> Vec<S::Element> {
    let mut l = Vec::new();
    for x in q {
        if preprocess_into(sim, x, s, &mut l) {
            stats.true_discards += 1;
        }
    }
    l
}

/// Preprocess each member of `d` in turn, simplifying it by `s`, the members
/// of `d` not yet processed, and the accumulator `r`.
pub fn preprocess_list<S: Simplifier>(
    sim: &S,
    d: &[S::Element],
    s: &[S::Element],
    r: &[S::Element],
) -> Vec<S::Element> {
    let mut acc = r.to_vec();
    preprocess_list_into(sim, d, s, &mut acc, &mut IncorporationStats::default());
    acc
}

fn preprocess_list_into<S: Simplifier>(
    sim: &S,
    d: &[S::Element],
    s: &[S::Element],
    acc: &mut Vec<S::Element>,
    stats: &mut IncorporationStats,
) {
    for (i, x) in d.iter().enumerate() {
        let simplifiers: Vec<S::Element> = s.iter().chain(&d[i + 1..]).cloned().collect();
        if preprocess_into(sim, x, &simplifiers, acc) {
            stats.true_discards += 1;
        }
    }
}

/// Back-simplify `s` by each member of the limbo list `l` in turn.
pub fn process_limbo<S: Simplifier>(sim: &S, l: &[S::Element], s: &[S::Element]) -> IncorporationResult<S::Element> {
    let mut stats = IncorporationStats::default();
    let db = process_limbo_counted(sim, l, s, &mut stats);
    IncorporationResult { final_db: db, stats }
}

fn process_limbo_counted<S: Simplifier>(
    sim: &S,
    l: &[S::Element],
    s: &[S::Element],
    stats: &mut IncorporationStats,
) -> Vec<S::Element> {
    let mut limbo: VecDeque<S::Element> = l.iter().cloned().collect();
    let mut db: Vec<S::Element> = s.to_vec();

    loop {
        record(&mut stats.measure_trace, measure(sim, &limbo, &db), &limbo, &db);
        let Some(b) = limbo.front().cloned() else {
            break;
        };
        stats.iterations += 1;
        let extracted = extract_rewritables(sim, &b, &db);
        let keep = remove_rewritables(sim, &b, &db);
        tally_extraction(stats, extracted.len());

        // simplifier set: the surviving db followed by the whole limbo list
        let context: Vec<S::Element> = keep.iter().chain(limbo.iter()).cloned().collect();
        let mut fresh = Vec::new();
        preprocess_list_into(sim, &extracted, &context, &mut fresh, stats);

        limbo.pop_front();
        limbo.extend(fresh);
        db = std::iter::once(b).chain(keep).collect();
    }
    db
}

/// Two-stage incorporation: forward simplification into a limbo list, then
/// back simplification of the database by the limbo list.
pub fn limbo_incorporate<S: Simplifier>(
    sim: &S,
    q: &[S::Element],
    s: &[S::Element],
) -> IncorporationResult<S::Element> {
    let mut stats = IncorporationStats::default();
    let limbo = initial_limbo_counted(sim, q, s, &mut stats);
    let db = process_limbo_counted(sim, &limbo, s, &mut stats);
    IncorporationResult { final_db: db, stats }
}

pub fn incorporate<S: Simplifier>(
    sim: &S,
    mode: Mode,
    q: &[S::Element],
    s: &[S::Element],
) -> IncorporationResult<S::Element> {
    match mode {
        Mode::Direct => direct_incorporate(sim, q, s),
        Mode::Limbo => limbo_incorporate(sim, q, s),
    }
}

/// Incorporate the members of `raw` one at a time into an initially empty
/// database. The result is irreducible for any conforming simplifier.
pub fn bootstrap<S: Simplifier>(sim: &S, raw: &[S::Element]) -> Vec<S::Element> {
    raw.iter().fold(Vec::new(), |db, e| {
        direct_incorporate(sim, std::slice::from_ref(e), &db).final_db
    })
}

pub fn is_strictly_decreasing(trace: &[MeasurePair]) -> bool {
    trace.windows(2).all(|w| w[1] < w[0])
}
