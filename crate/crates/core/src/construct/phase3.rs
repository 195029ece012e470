use crate::dsep::reaches;
use crate::graph::{Dag, Graph};
use crate::model::{closure_gap, DependencyModel, Statement, VarId, VarSet};

use super::{Failure, FailureDetail, FailureReason, Phase};

/// Checks that `d` represents exactly the statements of `m`, using the
/// deterministic topological order of `d`.
///
/// 1. Every generator of `m` (the basis of a closed model, otherwise every
///    statement) holds in `d`.
/// 2. For every node `a`, `I(a, U_a ∖ pa(a) | pa(a))` is in `m`, where `U_a`
///    are the nodes ordered before `a`. Statements with an empty middle set
///    are vacuous.
/// 3. An explicit model is closed under the semigraphoid axioms. Step 2 only
///    proves `d`'s statements are in `m` when `m` is closed.
pub fn phase3(d: &Dag, m: &DependencyModel) -> Result<(), Failure> {
    let order = d.topological_order().expect("a Dag is acyclic");
    phase3_with_order(d, m, &order)
}

/// [`phase3`] with a caller-chosen topological order.
///
/// # Panics
///
/// Panics if `order` is not a topological order of `d`, or if `m` and `d`
/// have different universes.
pub fn phase3_with_order(d: &Dag, m: &DependencyModel, order: &[VarId]) -> Result<(), Failure> {
    assert_eq!(d.node_count(), m.universe_len(), "dag and model universes differ");
    assert_eq!(order.len(), d.node_count(), "order must list every node once");
    let fail = |reason, s: Statement| Failure {
        phase: Phase::Three,
        reason,
        detail: FailureDetail::Statement(s),
    };

    for s in m.generators() {
        if reaches(d, s.lhs(), s.rhs(), s.cond()) {
            return Err(fail(FailureReason::StatementNotInDag, *s));
        }
    }

    let mut preceding = VarSet::EMPTY;
    for &a in order {
        assert!(
            !preceding.contains(a) && d.parents(a).is_subset(preceding),
            "order is not topological"
        );
        let parents = d.parents(a);
        let rest = preceding - parents;
        if !rest.is_empty() {
            let s = Statement::new(VarSet::singleton(a), rest, parents)
                .expect("sides are disjoint and nonempty");
            if !m.statements().contains(&s) {
                return Err(fail(FailureReason::DagStatementNotInModel, s));
            }
        }
        preceding.insert(a);
    }

    if !m.is_closed_basis() {
        if let Some(s) = closure_gap(m) {
            return Err(fail(FailureReason::ModelNotClosed, s));
        }
    }
    Ok(())
}
