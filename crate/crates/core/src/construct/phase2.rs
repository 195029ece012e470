use std::collections::BTreeSet;

use crate::graph::{Dag, Graph, Link, Pdag, Vee};
use crate::model::{VarId, VarSet};

use super::{Failure, FailureDetail, FailureReason, Phase, Phase2Mode, TraceEvent, Tracer};

/// One speculative orientation on the backtracking stack.
#[derive(Clone, Debug)]
pub struct Phase2Frame {
    pub edge: Link,
    /// Orientation currently being explored, as `(tail, head)`.
    pub direction: (VarId, VarId),
    /// Working graph before the choice was applied.
    pub snapshot: Pdag,
    /// Whether the reverse direction has been taken already.
    pub reversed: bool,
}

/// A closure that produced a directed cycle or a vee not present in the
/// pattern.
#[derive(Debug)]
struct Unsuccessful;

struct Closer<'a> {
    reference: &'a BTreeSet<Vee>,
}

impl Closer<'_> {
    /// Directs `tail -> head`, rejecting cycles and new vee structures.
    fn orient(&self, g: &mut Pdag, tail: VarId, head: VarId) -> Result<(), Unsuccessful> {
        if g.has_directed_path(head, tail) {
            return Err(Unsuccessful);
        }
        for p in g.parents(head).without(tail) {
            if !g.is_adjacent(p, tail) && !self.reference.contains(&Vee::new(p, head, tail)) {
                return Err(Unsuccessful);
            }
        }
        g.set_directed(tail, head);
        Ok(())
    }

    fn forced(g: &Pdag, rule: u8, u: VarId, v: VarId) -> Option<VarSet> {
        let fires = match rule {
            // a -> u - v, a not adjacent to v
            1 => !(g.parents(u) - g.neighbors(v).with(v)).is_empty(),
            // u -> b -> v, u - v
            2 => !(g.children(u) & g.parents(v)).is_empty(),
            // u - a, u - c, a -> v, c -> v, a and c nonadjacent
            3 => {
                let cands = g.undirected_neighbors(u) & g.parents(v);
                cands
                    .iter()
                    .any(|a| !(cands - g.neighbors(a).with(a)).is_empty())
            }
            // u - v - c - d with d -> u, v and d nonadjacent: u -> v and c -> v
            4 => {
                let far = g.parents(u) - g.neighbors(v).with(v);
                let c = g
                    .undirected_neighbors(v)
                    .without(u)
                    .iter()
                    .find(|&c| !(g.undirected_neighbors(c) & far).is_empty());
                if let Some(c) = c {
                    return Some(VarSet::singleton(u).with(c));
                }
                // same shape with a -> v already directed: only u -> v is left
                g.parents(v).iter().any(|a| {
                    let far = g.parents(a) - g.neighbors(v).with(v);
                    !(g.undirected_neighbors(u) & far).is_empty()
                })
            }
            _ => unreachable!("rules are numbered 1 to 4"),
        };
        fires.then(|| VarSet::singleton(u))
    }

    /// Applies one rule at every undirected edge, in edge order.
    fn apply_rule(&self, g: &mut Pdag, rule: u8, tracer: &mut Tracer) -> Result<bool, Unsuccessful> {
        let mut changed = false;
        for link in g.undirected_edges() {
            for (u, v) in [(link.lo, link.hi), (link.hi, link.lo)] {
                if !g.is_undirected(u, v) {
                    break;
                }
                if let Some(tails) = Self::forced(g, rule, u, v) {
                    for tail in tails {
                        self.orient(g, tail, v)?;
                        tracer.record(TraceEvent::RuleFired { rule, tail, head: v });
                    }
                    changed = true;
                }
            }
        }
        Ok(changed)
    }

    /// Rules 1 to 4 in round-robin passes until none fires.
    fn close(&self, g: &mut Pdag, tracer: &mut Tracer) -> Result<(), Unsuccessful> {
        loop {
            let mut changed = false;
            for rule in 1..=4 {
                changed |= self.apply_rule(g, rule, tracer)?;
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

/// Tails that orientation rule `rule` (1 to 4) directs into `v`, reading
/// the undirected edge `u - v` as the candidate `u -> v`; `None` when the
/// rule does not match there. Rules 1 to 3 only ever direct `u -> v`; rule 4
/// also directs a second neighbor of `v` into it.
///
/// 1. `a -> u - v`, `a` and `v` nonadjacent.
/// 2. `u -> b -> v` and `u - v`.
/// 3. `u - a`, `u - c`, `a -> v`, `c -> v`, `a` and `c` nonadjacent.
/// 4. `u - v - c - d` undirected with `d -> u`, `v` and `d` nonadjacent;
///    also `a -> v` with `d -> a`, `u - d`, `v` and `d` nonadjacent, the
///    same shape after its first edge has been directed.
///
/// # Panics
///
/// Panics if `rule` is not in `1..=4` or `u - v` is not undirected.
pub fn forced_by_rule(g: &Pdag, rule: u8, u: VarId, v: VarId) -> Option<VarSet> {
    assert!(g.is_undirected(u, v), "rules match undirected edges only");
    Closer::forced(g, rule, u, v)
}

/// Extends `g` to a DAG with the same skeleton and the same vee structures.
///
/// In [`Phase2Mode::Backtrack`] the search is exhaustive; in
/// [`Phase2Mode::FailFast`] the first unsuccessful closure is final.
pub fn phase2(g: &Pdag, mode: Phase2Mode) -> Result<Dag, Failure> {
    run(g, mode, &mut Tracer::disabled())
}

pub(crate) fn run(g: &Pdag, mode: Phase2Mode, tracer: &mut Tracer) -> Result<Dag, Failure> {
    let reference = g.vee_structures();
    let closer = Closer {
        reference: &reference,
    };
    let mut stack: Vec<Phase2Frame> = Vec::new();
    let mut current = g.clone();
    let fail = |relied_on_conjecture| Failure {
        phase: Phase::Two,
        reason: FailureReason::NoExtension {
            relied_on_conjecture,
        },
        detail: FailureDetail::None,
    };

    // `pending` is a choice to apply before the next closure.
    let mut pending: Option<(VarId, VarId)> = None;
    loop {
        let attempt = match pending.take() {
            Some((tail, head)) => closer
                .orient(&mut current, tail, head)
                .and_then(|()| closer.close(&mut current, tracer)),
            None => closer.close(&mut current, tracer),
        };

        match attempt {
            Ok(()) => match current.first_undirected_edge() {
                None => {
                    return Ok(current.to_dag().expect("closure keeps the graph acyclic"));
                }
                Some(edge) => {
                    let direction = (edge.lo, edge.hi);
                    stack.push(Phase2Frame {
                        edge,
                        direction,
                        snapshot: current.clone(),
                        reversed: false,
                    });
                    tracer.record(TraceEvent::ChoicePushed {
                        tail: direction.0,
                        head: direction.1,
                        depth: stack.len(),
                    });
                    pending = Some(direction);
                }
            },
            Err(Unsuccessful) => {
                if mode == Phase2Mode::FailFast {
                    return Err(fail(!stack.is_empty()));
                }
                loop {
                    let Some(mut frame) = stack.pop() else {
                        return Err(fail(false));
                    };
                    tracer.record(TraceEvent::FramePopped {
                        tail: frame.direction.0,
                        head: frame.direction.1,
                        depth: stack.len() + 1,
                    });
                    if frame.reversed {
                        continue;
                    }
                    let (tail, head) = frame.direction;
                    frame.direction = (head, tail);
                    frame.reversed = true;
                    current = frame.snapshot.clone();
                    stack.push(frame);
                    tracer.record(TraceEvent::ChoicePushed {
                        tail: head,
                        head: tail,
                        depth: stack.len(),
                    });
                    pending = Some((head, tail));
                    break;
                }
            }
        }
    }
}
