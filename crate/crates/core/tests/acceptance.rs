//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use incorp::clauses::UnitClauses;
use incorp::equations::GroundEquations;
use incorp::harness::{
    check_law, check_laws, run_theorems, ClauseGen, EquationGen, LawReport, Mutant, Mutation, TheoremConfig,
    TheoremReport,
};

const LAW_CASES: u64 = 10_000;
const LAW_SEED: u64 = 1;
const LAW_BUDGET: Duration = Duration::from_secs(60);
const MUTANT_CASES: u64 = 1_000;
const CLAUSE_INSTANCES: u64 = 5_000;
const EQUATION_INSTANCES: u64 = 500;
const MIN_INSTANCES: u64 = 500;
const MAX_DB: usize = 12;
const MAX_QUEUE: usize = 12;
const CLAUSE_ATOMS: usize = 8;
const CLAUSE_LITERALS: usize = 4;
const EQUATION_DEPTH: usize = 3;
const ALGEBRAS_PER_INSTANCE: usize = 64;
const BOTH_CASES_MIN: u64 = 50;

struct Verdict {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn verdict(id: u32, title: &'static str, checks: &[(bool, String)]) -> Verdict {
    let passed = checks.iter().all(|(ok, _)| *ok);
    let detail = checks
        .iter()
        .map(|(ok, msg)| format!("{}{msg}", if *ok { "" } else { "NOT " }))
        .collect::<Vec<_>>()
        .join("; ");
    Verdict {
        id,
        title,
        passed,
        detail,
    }
}

fn laws_clean(reports: &[LawReport]) -> bool {
    reports.len() == 8 && reports.iter().all(|r| r.passed() && r.cases == LAW_CASES)
}

fn conformance() -> Verdict {
    let start = Instant::now();
    let clauses = check_laws(&UnitClauses, &ClauseGen::default(), LAW_SEED, LAW_CASES);
    let equations = check_laws(&GroundEquations, &EquationGen::default(), LAW_SEED, LAW_CASES);
    let elapsed = start.elapsed();
    for r in clauses.iter().chain(&equations).filter(|r| !r.passed()) {
        eprintln!("{r}");
    }
    let min_informative = clauses
        .iter()
        .chain(&equations)
        .map(|r| r.cases - r.vacuous)
        .min()
        .unwrap_or(0);
    verdict(
        1,
        "conformance: 8 laws x 10,000 cases, both theories, under 60 s",
        &[
            (laws_clean(&clauses), "clause laws clean".into()),
            (laws_clean(&equations), "equation laws clean".into()),
            (elapsed < LAW_BUDGET, format!("{:.1} s elapsed", elapsed.as_secs_f64())),
            (
                min_informative > 0,
                format!("min non-vacuous cases per law {min_informative}"),
            ),
        ],
    )
}

fn mutation_sensitivity() -> Verdict {
    let gen = ClauseGen::default();
    let checks: Vec<(bool, String)> = Mutation::ALL
        .iter()
        .map(|&m| {
            let r = check_law(&Mutant(m), &gen, m.target(), LAW_SEED, MUTANT_CASES);
            match r.counterexample {
                Some(cx) => (true, format!("{m:?} caught by {} at case {}", m.target(), cx.case)),
                None => (false, format!("{m:?} caught by {}", m.target())),
            }
        })
        .collect();
    verdict(
        2,
        "mutation sensitivity: each mutant caught within 1,000 cases",
        &checks,
    )
}

fn theorem_config(instances: u64) -> TheoremConfig {
    TheoremConfig {
        instances,
        seed: 1,
        max_db: MAX_DB,
        max_queue: MAX_QUEUE,
    }
}

fn clause_gen() -> ClauseGen {
    ClauseGen {
        max_literals: CLAUSE_LITERALS,
        ..ClauseGen::with_atoms(CLAUSE_ATOMS)
    }
}

fn equation_gen() -> EquationGen {
    EquationGen {
        max_depth: EQUATION_DEPTH,
        algebras: ALGEBRAS_PER_INSTANCE,
        ..EquationGen::default()
    }
}

fn print_failures(r: &TheoremReport) {
    for f in &r.failures {
        eprintln!("{f}");
    }
}

fn irreducibility(c: &TheoremReport, e: &TheoremReport) -> Verdict {
    print_failures(c);
    print_failures(e);
    verdict(
        3,
        "irreducibility preserved by both procedures",
        &[
            (
                c.instances >= MIN_INSTANCES && e.instances >= MIN_INSTANCES,
                format!("{} clause / {} equation instances", c.instances, e.instances),
            ),
            (
                c.max_db_len <= MAX_DB && e.max_db_len <= MAX_DB,
                format!("bootstrapped db at most {} / {} elements", c.max_db_len, e.max_db_len),
            ),
            (
                c.bootstrap_failures + e.bootstrap_failures == 0,
                "bootstrap irreducible".into(),
            ),
            (
                c.direct.irreducible_failures + e.direct.irreducible_failures == 0,
                "direct outputs irreducible".into(),
            ),
            (
                c.limbo.irreducible_failures + e.limbo.irreducible_failures == 0,
                "limbo outputs irreducible".into(),
            ),
        ],
    )
}

fn soundness(c: &TheoremReport, e: &TheoremReport) -> Verdict {
    verdict(
        4,
        "soundness of both procedures",
        &[
            (
                c.min_interpretations == 1 << CLAUSE_ATOMS,
                format!("{} valuations per clause instance", c.min_interpretations),
            ),
            (
                c.direct.soundness_failures + c.limbo.soundness_failures == 0,
                "clause outputs equivalent to q and s".into(),
            ),
            (
                e.min_interpretations >= ALGEBRAS_PER_INSTANCE,
                format!("{} algebras per equation instance", e.min_interpretations),
            ),
            (
                e.direct.soundness_failures + e.limbo.soundness_failures == 0,
                "equation outputs agree with q and s on every sampled algebra".into(),
            ),
        ],
    )
}

fn termination(c: &TheoremReport, e: &TheoremReport) -> Verdict {
    let tallies = [&c.direct, &c.limbo, &e.direct, &e.limbo];
    let failures: u64 = tallies.iter().map(|t| t.measure_failures).sum();
    let steps: u64 = tallies.iter().map(|t| t.measure_steps).sum();
    let both_min = tallies.iter().map(|t| t.both_cases_instances).min().unwrap();
    verdict(
        5,
        "termination measure strictly decreasing",
        &[
            (
                failures == 0,
                format!("{steps} recorded measures, all strictly decreasing"),
            ),
            (
                both_min >= BOTH_CASES_MIN,
                format!("at least {both_min} instances per procedure and theory exercise both extraction cases"),
            ),
        ],
    )
}

fn cross_procedure(c: &TheoremReport, e: &TheoremReport) -> Verdict {
    if let Some(ex) = &c.example_difference {
        eprintln!("clause outputs that differ:\n{ex}");
    }
    verdict(
        6,
        "direct and limbo outputs equivalent, not always identical",
        &[
            (
                c.cross_equivalence_failures == 0,
                "clause outputs equivalent under all valuations".into(),
            ),
            (
                e.cross_equivalence_failures == 0,
                "equation outputs agree on sampled algebras".into(),
            ),
            (
                c.order_differences >= 1,
                format!(
                    "{} clause instances with differing output sequences",
                    c.order_differences
                ),
            ),
            (
                c.content_differences + e.content_differences >= 1,
                format!(
                    "{} clause / {} equation instances with differing output contents",
                    c.content_differences, e.content_differences
                ),
            ),
        ],
    )
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Golden {
    theory: &'static str,
    mode: &'static str,
    db: &'static str,
    new: &'static str,
    expected: &'static str,
}

const GOLDEN: &[Golden] = &[
    Golden {
        theory: "clauses",
        mode: "direct",
        db: "trace1_db.cnf",
        new: "trace1_new.cnf",
        expected: "trace1_expected.cnf",
    },
    Golden {
        theory: "clauses",
        mode: "limbo",
        db: "trace1_db.cnf",
        new: "trace1_new.cnf",
        expected: "trace1_expected.cnf",
    },
    Golden {
        theory: "clauses",
        mode: "direct",
        db: "trace2_db.cnf",
        new: "trace2_new.cnf",
        expected: "trace2_expected.cnf",
    },
    Golden {
        theory: "clauses",
        mode: "limbo",
        db: "trace2_db.cnf",
        new: "trace2_new.cnf",
        expected: "trace2_expected.cnf",
    },
    Golden {
        theory: "clauses",
        mode: "direct",
        db: "canonical_db.cnf",
        new: "empty_new.cnf",
        expected: "canonical_db.cnf",
    },
    Golden {
        theory: "clauses",
        mode: "limbo",
        db: "canonical_db.cnf",
        new: "empty_new.cnf",
        expected: "canonical_db.cnf",
    },
    Golden {
        theory: "equations",
        mode: "direct",
        db: "eq_db.eqn",
        new: "eq_new.eqn",
        expected: "eq_expected.eqn",
    },
    Golden {
        theory: "equations",
        mode: "limbo",
        db: "eq_db.eqn",
        new: "eq_new.eqn",
        expected: "eq_expected.eqn",
    },
    Golden {
        theory: "equations",
        mode: "direct",
        db: "eq_true_db.eqn",
        new: "eq_new.eqn",
        expected: "eq_true_expected.eqn",
    },
    Golden {
        theory: "equations",
        mode: "limbo",
        db: "eq_true_db.eqn",
        new: "eq_new.eqn",
        expected: "eq_true_expected.eqn",
    },
];

fn golden_fixtures() -> Verdict {
    let dir = tempfile::tempdir().expect("tempdir");
    let checks: Vec<(bool, String)> = GOLDEN
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let out = dir.path().join(format!("out{i}"));
            let status = Command::new(env!("CARGO_BIN_EXE_incorp"))
                .args(["incorporate", "--theory", g.theory, "--mode", g.mode, "--db"])
                .arg(fixture(g.db))
                .arg("--new")
                .arg(fixture(g.new))
                .arg("--out")
                .arg(&out)
                .output()
                .expect("run incorp");
            let label = format!("{} {} {} <- {}", g.theory, g.mode, g.db, g.new);
            let want = fs::read(fixture(g.expected)).expect("expected fixture");
            let got = fs::read(&out).unwrap_or_default();
            let ok = status.status.code() == Some(0) && got == want;
            if !ok {
                eprintln!(
                    "{label}: exit {:?}\nwant {:?}\ngot  {:?}\n{}",
                    status.status.code(),
                    String::from_utf8_lossy(&want),
                    String::from_utf8_lossy(&got),
                    String::from_utf8_lossy(&status.stderr)
                );
            }
            (ok, label)
        })
        .collect();
    verdict(7, "hand-traced fixtures byte-for-byte through the CLI", &checks)
}

fn main() {
    let mut verdicts = vec![conformance(), mutation_sensitivity()];

    let clauses = run_theorems(&UnitClauses, &clause_gen(), &theorem_config(CLAUSE_INSTANCES));
    let equations = run_theorems(&GroundEquations, &equation_gen(), &theorem_config(EQUATION_INSTANCES));
    verdicts.push(irreducibility(&clauses, &equations));
    verdicts.push(soundness(&clauses, &equations));
    verdicts.push(termination(&clauses, &equations));
    verdicts.push(cross_procedure(&clauses, &equations));
    verdicts.push(golden_fixtures());

    println!();
    for v in &verdicts {
        println!(
            "[{}] criterion {}: {}\n       {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.id,
            v.title,
            v.detail
        );
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("\nacceptance: {} passed, {} failed", verdicts.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
