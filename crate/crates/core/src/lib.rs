//! Decide whether a list of conditional independence statements is
//! *dag-isomorphic*: whether some directed acyclic graph represents every
//! listed statement, and no other, through d-separation.
//!
//! The decision runs in three phases (see [`construct`]):
//!
//! 1. build a partially directed graph whose skeleton and vee structures are
//!    forced by the statements,
//! 2. extend it to a fully directed acyclic graph with orientation rules and
//!    a backtracking stack,
//! 3. verify that the extension is consistent with the statements.
//!
//! [`oracle`] holds exhaustive, brute-force counterparts used to check the
//! pipeline on small universes.

pub mod construct;
pub mod dsep;
pub mod graph;
pub mod model;
pub mod oracle;

pub use construct::{
    decide, decide_with, phase1, phase2, phase3, phase3_with_order, DecideOptions, Decision,
    Failure, FailureDetail, FailureReason, Outcome, Phase, Phase2Mode, SeparatorTable,
    TraceEvent,
};
pub use dsep::{d_separated, d_separated_naive, full_model, DsepError, DsepQuery};
pub use graph::{Dag, Graph, GraphError, Link, Pdag, Vee};
pub use model::{
    canonicalize, close_semigraphoid, ClosureConfig, DependencyModel, ModelError, Origin,
    Statement, Universe, VarId, VarSet, MAX_VARS,
};
