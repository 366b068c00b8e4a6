//! The `incorp` command line.
//!
//! Exit codes: 0 on success, 1 when a property is violated or a
//! counterexample is found, 2 on unreadable or malformed input.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::clauses::{atoms_of, UnitClauses, Valuation};
use crate::engine::{incorporate, Mode};
use crate::equations::{signature_of, GroundEquations};
use crate::format::{ElementFormat, ParseError};
use crate::harness::{
    case_rng, check_laws, enumerate_valuations, first_unsound_interpretation, ClauseGen, EquationGen, Generator,
    HarnessError, LawReport,
};
use crate::irreducible::{first_reducible_pair, irreducible_list};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const VERIFY_STREAM: u64 = 0x7e71_f000;
const DEFAULT_ALGEBRAS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    Clauses,
    Equations,
}

impl std::str::FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "clauses" => Ok(Theory::Clauses),
            "equations" => Ok(Theory::Equations),
            other => Err(format!("unknown theory `{other}` (expected clauses or equations)")),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Clauses => "clauses",
            Theory::Equations => "equations",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Incorporate,
    Conform,
    Verify,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub mode: Mode,
    pub theory: Theory,
    pub db_path: Option<PathBuf>,
    pub new_path: Option<PathBuf>,
    pub out_path: Option<PathBuf>,
    pub seed: u64,
    pub iters: u64,
    pub trace: bool,
    pub atom_cap: usize,
    /// Sampled interpretations for `verify`; required for clause files whose
    /// atom count exceeds `atom_cap`.
    pub samples: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(
    name = "incorp",
    version,
    about = "Incorporate new elements into an irreducible database"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Incorporate the elements of --new into --db and write the result to --out.
    Incorporate(Flags),
    /// Check the reference simplifier of --theory against the contract laws.
    Conform(Flags),
    /// Check that --out is irreducible and equivalent to --new together with --db.
    Verify(Flags),
}

#[derive(Debug, Args)]
pub struct Flags {
    #[arg(long, default_value = "direct")]
    pub mode: Mode,
    #[arg(long, default_value = "clauses")]
    pub theory: Theory,
    #[arg(long)]
    pub db: Option<PathBuf>,
    #[arg(long)]
    pub new: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub iters: u64,
    /// Include the termination-measure trace in the stats.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value_t = crate::harness::DEFAULT_ATOM_CAP)]
    pub atom_cap: usize,
    /// Use this many random interpretations instead of exhaustive ones.
    #[arg(long)]
    pub samples: Option<usize>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, f) = match cli.command {
            CliCommand::Incorporate(f) => (Command::Incorporate, f),
            CliCommand::Conform(f) => (Command::Conform, f),
            CliCommand::Verify(f) => (Command::Verify, f),
        };
        RunConfig {
            command,
            mode: f.mode,
            theory: f.theory,
            db_path: f.db,
            new_path: f.new,
            out_path: f.out,
            seed: f.seed,
            iters: f.iters,
            trace: f.trace,
            atom_cap: f.atom_cap,
            samples: f.samples,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{}:{}: {}", path.display(), source.line, source.column, source.message)]
    Parse { path: PathBuf, source: ParseError },
    #[error("`{command}` requires --{flag}")]
    MissingFlag { command: &'static str, flag: &'static str },
    #[error("{0}")]
    Signature(String),
    #[error("{0} (pass --samples N)")]
    Enumeration(#[from] HarnessError),
    #[error("--iters must be at least 1")]
    ZeroIters,
}

/// Operations the CLI needs from a theory beyond its file format.
trait CliTheory: ElementFormat {
    fn conform(&self, seed: u64, iters: u64) -> Vec<LawReport>;

    fn verify_interpretations(&self, sets: &[&[Self::Element]], cfg: &RunConfig)
        -> Result<Vec<Self::Interp>, CliError>;
}

impl CliTheory for UnitClauses {
    fn conform(&self, seed: u64, iters: u64) -> Vec<LawReport> {
        check_laws(self, &ClauseGen::default(), seed, iters)
    }

    fn verify_interpretations(&self, sets: &[&[Self::Element]], cfg: &RunConfig) -> Result<Vec<Valuation>, CliError> {
        let atoms = atoms_of(sets.iter().copied());
        match cfg.samples {
            None => Ok(enumerate_valuations(&atoms, cfg.atom_cap)?),
            Some(n) => {
                let gen = ClauseGen {
                    atoms,
                    atom_cap: 0,
                    samples: n,
                    ..ClauseGen::default()
                };
                Ok(gen.interpretations(&mut case_rng(cfg.seed, VERIFY_STREAM, 0)))
            }
        }
    }
}

impl CliTheory for GroundEquations {
    fn conform(&self, seed: u64, iters: u64) -> Vec<LawReport> {
        check_laws(self, &EquationGen::default(), seed, iters)
    }

    fn verify_interpretations(
        &self,
        sets: &[&[Self::Element]],
        cfg: &RunConfig,
    ) -> Result<Vec<crate::equations::FiniteAlgebra>, CliError> {
        let sig = signature_of(sets.iter().copied()).map_err(CliError::Signature)?;
        let mut signature: Vec<(String, usize)> = sig.into_iter().collect();
        if !signature.iter().any(|(_, a)| *a == 0) {
            // every ground term needs a constant; an unused one keeps the generator total
            signature.push(("$c".into(), 0));
        }
        let gen = EquationGen {
            signature,
            algebras: cfg.samples.unwrap_or(DEFAULT_ALGEBRAS),
            ..EquationGen::default()
        };
        Ok(gen.interpretations(&mut case_rng(cfg.seed, VERIFY_STREAM, 0)))
    }
}

fn read_set<T: ElementFormat>(theory: &T, path: &Path) -> Result<Vec<T::Element>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    theory.parse_set(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn required<'a>(path: &'a Option<PathBuf>, command: &'static str, flag: &'static str) -> Result<&'a Path, CliError> {
    path.as_deref().ok_or(CliError::MissingFlag { command, flag })
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) {
    // a closed stdout is not worth a distinct exit code
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json"));
}

/// Run one command. Returns the process exit code.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cfg.theory {
        Theory::Clauses => dispatch(&UnitClauses, cfg, stdout, stderr),
        Theory::Equations => dispatch(&GroundEquations, cfg, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch<T: CliTheory>(
    theory: &T,
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    match cfg.command {
        Command::Incorporate => run_incorporate(theory, cfg, stdout),
        Command::Conform => run_conform(theory, cfg, stdout, stderr),
        Command::Verify => run_verify(theory, cfg, stdout, stderr),
    }
}

fn run_incorporate<T: CliTheory>(theory: &T, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let db_path = required(&cfg.db_path, "incorporate", "db")?;
    let new_path = required(&cfg.new_path, "incorporate", "new")?;
    let out_path = required(&cfg.out_path, "incorporate", "out")?;
    let db = read_set(theory, db_path)?;
    let new = read_set(theory, new_path)?;

    let result = incorporate(theory, cfg.mode, &new, &db);

    fs::write(out_path, theory.render_set(&result.final_db)).map_err(|source| CliError::Io {
        path: out_path.to_path_buf(),
        source,
    })?;

    let stats = &result.stats;
    let mut report = json!({
        "mode": cfg.mode.to_string(),
        "theory": cfg.theory.to_string(),
        "db_size": db.len(),
        "new_size": new.len(),
        "final_size": result.final_db.len(),
        "iterations": stats.iterations,
        "true_discards": stats.true_discards,
        "back_simplifications": stats.back_simplifications,
        "empty_extractions": stats.empty_extractions,
        "nonempty_extractions": stats.nonempty_extractions,
    });
    if cfg.trace {
        report["measure_trace"] = json!(stats
            .measure_trace
            .iter()
            .map(|m| [m.first, m.second])
            .collect::<Vec<_>>());
    }
    emit_json(stdout, &report);
    Ok(EXIT_OK)
}

fn run_conform<T: CliTheory>(
    theory: &T,
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    if cfg.iters == 0 {
        return Err(CliError::ZeroIters);
    }
    let reports = theory.conform(cfg.seed, cfg.iters);
    for r in &reports {
        let _ = writeln!(stderr, "{r}");
    }
    let passed = reports.iter().all(LawReport::passed);
    emit_json(
        stdout,
        &json!({
            "theory": cfg.theory.to_string(),
            "seed": cfg.seed,
            "iters": cfg.iters,
            "passed": passed,
            "laws": reports,
        }),
    );
    Ok(if passed { EXIT_OK } else { EXIT_VIOLATION })
}

fn run_verify<T: CliTheory>(
    theory: &T,
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let db = read_set(theory, required(&cfg.db_path, "verify", "db")?)?;
    let new = read_set(theory, required(&cfg.new_path, "verify", "new")?)?;
    let after = read_set(theory, required(&cfg.out_path, "verify", "out")?)?;

    let interps = theory.verify_interpretations(&[&db, &new, &after], cfg)?;
    let reducible = first_reducible_pair(theory, &after);
    let unsound = first_unsound_interpretation(theory, &new, &db, &after, &interps);

    if let Some((i, j)) = reducible {
        let _ = writeln!(
            stderr,
            "not irreducible: elements {} and {} interact\n  {}\n  {}",
            i + 1,
            j + 1,
            theory.render(&after[i]),
            theory.render(&after[j])
        );
    }
    if let Some(k) = unsound {
        let _ = writeln!(
            stderr,
            "not equivalent under interpretation:\n{}",
            theory.render_interpretation(&interps[k])
        );
    }

    let ok = reducible.is_none() && unsound.is_none();
    emit_json(
        stdout,
        &json!({
            "theory": cfg.theory.to_string(),
            "db_irreducible": irreducible_list(theory, &db),
            "irreducible": reducible.is_none(),
            "sound": unsound.is_none(),
            "interpretations": interps.len(),
            "sampled": cfg.samples.is_some() || cfg.theory == Theory::Equations,
        }),
    );
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}
