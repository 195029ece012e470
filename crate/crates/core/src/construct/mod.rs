//! The three-phase decision procedure.
//!
//! [`phase1`] derives the skeleton and vee structures a consistent DAG must
//! have, [`phase2`] extends that pattern to a DAG, and [`phase3`] checks the
//! DAG against the model. [`decide`] chains them.

mod phase1;
mod phase2;
mod phase3;

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{Dag, Link, Pdag};
use crate::model::{DependencyModel, Statement, VarId, VarSet};

pub use phase1::phase1;
pub use phase2::{forced_by_rule, phase2, Phase2Frame};
pub use phase3::{phase3, phase3_with_order};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    One,
    Two,
    Three,
}

impl Phase {
    pub fn number(self) -> u8 {
        match self {
            Phase::One => 1,
            Phase::Two => 2,
            Phase::Three => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// A vee orientation met an existing directed path back from the center.
    OrientationConflict,
    /// The pattern has no extension. In fail-fast mode
    /// `relied_on_conjecture` records that a free choice was outstanding, so
    /// the verdict trusts that choices never need revoking.
    NoExtension { relied_on_conjecture: bool },
    /// A model statement does not hold in the candidate DAG.
    StatementNotInDag,
    /// A parent-screening statement of the candidate DAG is missing from the
    /// model.
    DagStatementNotInModel,
    /// An explicit model is not closed under the semigraphoid axioms, so no
    /// DAG can represent it.
    ModelNotClosed,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::OrientationConflict => "orientation_conflict",
            FailureReason::NoExtension { .. } => "no_extension",
            FailureReason::StatementNotInDag => "statement_not_in_dag",
            FailureReason::DagStatementNotInModel => "dag_statement_not_in_model",
            FailureReason::ModelNotClosed => "model_not_closed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureDetail {
    None,
    /// `left`/`right` are the separated pair, `center` the common neighbor.
    Triple {
        left: VarId,
        center: VarId,
        right: VarId,
    },
    Statement(Statement),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Failure {
    pub phase: Phase,
    pub reason: FailureReason,
    pub detail: FailureDetail,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phase {} failed: {}", self.phase.number(), self.reason.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Witness(Dag),
    Fail(Failure),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Phase2Mode {
    /// Exhaustive search: a failure is definitive.
    #[default]
    Backtrack,
    /// Give up on the first unsuccessful closure.
    FailFast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DecideOptions {
    pub mode: Phase2Mode,
    pub trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    EdgeRemoved { link: Link, separator: VarSet },
    VeeOriented { left: VarId, center: VarId, right: VarId },
    RuleFired { rule: u8, tail: VarId, head: VarId },
    ChoicePushed { tail: VarId, head: VarId, depth: usize },
    FramePopped { tail: VarId, head: VarId, depth: usize },
    PhaseVerdict { phase: Phase, passed: bool },
}

/// Sink for trace events; a disabled tracer drops them.
#[derive(Debug, Default)]
pub(crate) struct Tracer {
    events: Option<Vec<TraceEvent>>,
}

impl Tracer {
    pub(crate) fn new(enabled: bool) -> Self {
        Tracer {
            events: enabled.then(Vec::new),
        }
    }

    pub(crate) fn disabled() -> Self {
        Tracer { events: None }
    }

    pub(crate) fn record(&mut self, event: TraceEvent) {
        if let Some(events) = &mut self.events {
            events.push(event);
        }
    }

    fn into_events(self) -> Vec<TraceEvent> {
        self.events.unwrap_or_default()
    }
}

/// Witness separators recorded for each nonadjacent pair of the skeleton.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparatorTable(BTreeMap<Link, VarSet>);

impl SeparatorTable {
    pub fn get(&self, a: VarId, b: VarId) -> Option<VarSet> {
        self.0.get(&Link::new(a, b)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Link, VarSet)> + '_ {
        self.0.iter().map(|(&l, &s)| (l, s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn insert(&mut self, link: Link, separator: VarSet) {
        self.0.insert(link, separator);
    }
}

/// Result of [`decide`]: the verdict plus whatever intermediate products
/// were reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub outcome: Outcome,
    /// Phase-1 pattern, when phase 1 succeeded.
    pub pattern: Option<Pdag>,
    pub separators: Option<SeparatorTable>,
    pub trace: Vec<TraceEvent>,
}

impl Decision {
    pub fn witness(&self) -> Option<&Dag> {
        match &self.outcome {
            Outcome::Witness(d) => Some(d),
            Outcome::Fail(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&Failure> {
        match &self.outcome {
            Outcome::Witness(_) => None,
            Outcome::Fail(f) => Some(f),
        }
    }

    pub fn is_witness(&self) -> bool {
        self.witness().is_some()
    }
}

/// Runs all three phases with backtracking and no trace.
pub fn decide(m: &DependencyModel) -> Decision {
    decide_with(m, DecideOptions::default())
}

pub fn decide_with(m: &DependencyModel, options: DecideOptions) -> Decision {
    let mut tracer = Tracer::new(options.trace);
    let finish = |outcome, pattern, separators, tracer: Tracer| Decision {
        outcome,
        pattern,
        separators,
        trace: tracer.into_events(),
    };

    let (pattern, separators) = match phase1::run(m, &mut tracer) {
        Ok(ok) => ok,
        Err(f) => {
            tracer.record(TraceEvent::PhaseVerdict {
                phase: Phase::One,
                passed: false,
            });
            return finish(Outcome::Fail(f), None, None, tracer);
        }
    };
    tracer.record(TraceEvent::PhaseVerdict {
        phase: Phase::One,
        passed: true,
    });

    let dag = match phase2::run(&pattern, options.mode, &mut tracer) {
        Ok(d) => d,
        Err(f) => {
            tracer.record(TraceEvent::PhaseVerdict {
                phase: Phase::Two,
                passed: false,
            });
            return finish(Outcome::Fail(f), Some(pattern), Some(separators), tracer);
        }
    };
    tracer.record(TraceEvent::PhaseVerdict {
        phase: Phase::Two,
        passed: true,
    });

    let verdict = phase3(&dag, m);
    tracer.record(TraceEvent::PhaseVerdict {
        phase: Phase::Three,
        passed: verdict.is_ok(),
    });
    let outcome = match verdict {
        Ok(()) => Outcome::Witness(dag),
        Err(f) => Outcome::Fail(f),
    };
    finish(outcome, Some(pattern), Some(separators), tracer)
}
