use crate::graph::{Graph, Link, Pdag};
use crate::model::DependencyModel;

use super::{Failure, FailureDetail, FailureReason, Phase, SeparatorTable, TraceEvent, Tracer};

/// Builds the pattern: the skeleton of pairs with no separator in `m`, with
/// `a -> b <- c` directed for every nonadjacent `a, c` and common neighbor
/// `b` outside the first separator found for `a, c`.
///
/// Fails when such an orientation meets a directed path from `b` back to `a`
/// or to `c` (an opposite orientation of the same edge counts).
pub fn phase1(m: &DependencyModel) -> Result<(Pdag, SeparatorTable), Failure> {
    run(m, &mut Tracer::disabled())
}

pub(crate) fn run(m: &DependencyModel, tracer: &mut Tracer) -> Result<(Pdag, SeparatorTable), Failure> {
    let n = m.universe_len();
    let mut g = Pdag::complete(n);
    let mut separators = SeparatorTable::default();
    for ((a, b), s) in m.first_separators() {
        g.remove_edge(a, b);
        let link = Link::new(a, b);
        separators.insert(link, s);
        tracer.record(TraceEvent::EdgeRemoved { link, separator: s });
    }

    for (link, sep) in separators.iter() {
        let (a, c) = (link.lo, link.hi);
        let common = g.neighbors(a) & g.neighbors(c);
        for b in common - sep {
            if g.has_directed_path(b, a) || g.has_directed_path(b, c) {
                return Err(Failure {
                    phase: Phase::One,
                    reason: FailureReason::OrientationConflict,
                    detail: FailureDetail::Triple {
                        left: a,
                        center: b,
                        right: c,
                    },
                });
            }
            if !(g.is_directed(a, b) && g.is_directed(c, b)) {
                g.set_directed(a, b);
                g.set_directed(c, b);
                tracer.record(TraceEvent::VeeOriented {
                    left: a,
                    center: b,
                    right: c,
                });
            }
        }
    }
    debug_assert!(!g.has_directed_cycle());
    Ok((g, separators))
}
