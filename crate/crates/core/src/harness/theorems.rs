//! End-to-end checks of both incorporation procedures on random instances:
//! irreducibility preservation, soundness, termination-measure decrease and
//! agreement between the two procedures.

use serde::Serialize;

use crate::engine::{bootstrap, direct_incorporate, is_strictly_decreasing, limbo_incorporate, IncorporationResult};
use crate::format::ElementFormat;
use crate::irreducible::irreducible_list;

use super::generators::{case_rng, Generator};
use super::{equivalent, first_unsound_interpretation};

const THEOREM_STREAM: u64 = 0x7e0_0000;
const MAX_RECORDED_FAILURES: usize = 10;

#[derive(Debug, Clone)]
pub struct TheoremConfig {
    pub instances: u64,
    pub seed: u64,
    /// Upper bound on the raw database before bootstrapping.
    pub max_db: usize,
    pub max_queue: usize,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        TheoremConfig {
            instances: 500,
            seed: 1,
            max_db: 12,
            max_queue: 12,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ProcedureTally {
    pub irreducible_failures: u64,
    pub soundness_failures: u64,
    pub measure_failures: u64,
    /// Instances with at least one iteration that extracted db members.
    pub nonempty_extraction_instances: u64,
    /// Instances with at least one iteration that kept an element and
    /// extracted nothing.
    pub empty_extraction_instances: u64,
    pub both_cases_instances: u64,
    pub measure_steps: u64,
}

impl ProcedureTally {
    fn failures(&self) -> u64 {
        self.irreducible_failures + self.soundness_failures + self.measure_failures
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TheoremReport {
    pub instances: u64,
    /// Bootstrapped databases that were not irreducible.
    pub bootstrap_failures: u64,
    pub max_db_len: usize,
    pub max_queue_len: usize,
    pub min_interpretations: usize,
    pub direct: ProcedureTally,
    pub limbo: ProcedureTally,
    pub cross_equivalence_failures: u64,
    /// Instances where the two final databases differ as sequences.
    pub order_differences: u64,
    /// Instances where they differ even as multisets.
    pub content_differences: u64,
    pub example_difference: Option<String>,
    pub failures: Vec<String>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.bootstrap_failures == 0
            && self.direct.failures() == 0
            && self.limbo.failures() == 0
            && self.cross_equivalence_failures == 0
    }
}

fn same_multiset<E: PartialEq>(a: &[E], b: &[E]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| match (0..b.len()).find(|&j| !used[j] && b[j] == *x) {
        Some(j) => {
            used[j] = true;
            true
        }
        None => false,
    })
}

pub fn run_theorems<S, G>(sim: &S, gen: &G, cfg: &TheoremConfig) -> TheoremReport
where
    S: ElementFormat,
    G: Generator<Element = S::Element, Interp = S::Interp>,
{
    let mut report = TheoremReport {
        min_interpretations: usize::MAX,
        ..TheoremReport::default()
    };

    for instance in 0..cfg.instances {
        let mut rng = case_rng(cfg.seed, THEOREM_STREAM, instance);
        let raw = gen.element_set_upto(&mut rng, cfg.max_db);
        let s = bootstrap(sim, &raw);
        let q = gen.element_set_upto(&mut rng, cfg.max_queue);
        let interps = gen.interpretations(&mut rng);

        report.instances += 1;
        report.max_db_len = report.max_db_len.max(s.len());
        report.max_queue_len = report.max_queue_len.max(q.len());
        report.min_interpretations = report.min_interpretations.min(interps.len());

        let describe = |what: &str| {
            format!(
                "instance {instance}: {what}\n  q:\n{}  s:\n{}",
                sim.render_set(&q),
                sim.render_set(&s)
            )
        };

        if !irreducible_list(sim, &s) {
            report.bootstrap_failures += 1;
            push_failure(&mut report.failures, describe("bootstrapped db is reducible"));
            continue;
        }

        let direct = direct_incorporate(sim, &q, &s);
        let limbo = limbo_incorporate(sim, &q, &s);

        for (name, result, tally) in [
            ("direct", &direct, &mut report.direct),
            ("limbo", &limbo, &mut report.limbo),
        ] {
            let problems = tally_procedure(sim, &q, &s, result, &interps, tally);
            for p in problems {
                push_failure(&mut report.failures, describe(&format!("{name}: {p}")));
            }
        }

        if !equivalent(sim, &direct.final_db, &limbo.final_db, &interps) {
            report.cross_equivalence_failures += 1;
            push_failure(&mut report.failures, describe("direct and limbo outputs disagree"));
        }
        if direct.final_db != limbo.final_db {
            report.order_differences += 1;
            let content = !same_multiset(&direct.final_db, &limbo.final_db);
            if content {
                report.content_differences += 1;
            }
            // prefer a content difference as the recorded example
            if report.example_difference.is_none() || content && report.content_differences == 1 {
                report.example_difference = Some(format!(
                    "{}  direct:\n{}  limbo:\n{}",
                    describe("outputs differ"),
                    sim.render_set(&direct.final_db),
                    sim.render_set(&limbo.final_db)
                ));
            }
        }
    }
    if report.instances == 0 {
        report.min_interpretations = 0;
    }
    report
}

fn tally_procedure<S: ElementFormat>(
    sim: &S,
    q: &[S::Element],
    s: &[S::Element],
    result: &IncorporationResult<S::Element>,
    interps: &[S::Interp],
    tally: &mut ProcedureTally,
) -> Vec<String> {
    let mut problems = Vec::new();
    if !irreducible_list(sim, &result.final_db) {
        tally.irreducible_failures += 1;
        problems.push(format!("final db is reducible:\n{}", sim.render_set(&result.final_db)));
    }
    if let Some(i) = first_unsound_interpretation(sim, q, s, &result.final_db, interps) {
        tally.soundness_failures += 1;
        problems.push(format!(
            "unsound under interpretation {}",
            sim.render_interpretation(&interps[i])
        ));
    }
    let stats = &result.stats;
    if !is_strictly_decreasing(&stats.measure_trace) {
        tally.measure_failures += 1;
        problems.push("measure trace is not strictly decreasing".into());
    }
    tally.measure_steps += stats.measure_trace.len() as u64;
    if stats.nonempty_extractions > 0 {
        tally.nonempty_extraction_instances += 1;
    }
    if stats.empty_extractions > 0 {
        tally.empty_extraction_instances += 1;
    }
    if stats.exercised_both_cases() {
        tally.both_cases_instances += 1;
    }
    problems
}

fn push_failure(failures: &mut Vec<String>, msg: String) {
    if failures.len() < MAX_RECORDED_FAILURES {
        failures.push(msg);
    }
}
