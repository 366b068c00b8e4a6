//! Incorporation of new elements into an irreducible database.
//!
//! The engine is generic over a [`Simplifier`]: an abstract simplification
//! theory with a distinguished TRUE element, an evaluator and a size
//! measure. Two reference theories are included:
//!
//! * [`clauses::UnitClauses`]: propositional clauses under subsumption and
//!   unit resolution.
//! * [`equations::GroundEquations`]: ground equations under size-decreasing
//!   rewriting.
//!
//! [`engine`] implements direct incorporation and the two-stage limbo
//! incorporation, [`irreducible`] decides mutual irreducibility, and
//! [`harness`] checks simplifiers against the contract laws and the
//! procedures against their irreducibility and soundness properties.

pub mod clauses;
pub mod cli;
pub mod contract;
pub mod engine;
pub mod equations;
pub mod format;
pub mod harness;
pub mod irreducible;

pub use contract::{ElementSet, EvalError, Law, Simplifier};
pub use engine::{
    direct_incorporate, incorporate, limbo_incorporate, IncorporationResult, IncorporationStats, MeasurePair, Mode,
};
pub use format::{ElementFormat, ParseError};
pub use irreducible::{irreducible_list, mutually_irreducible};
