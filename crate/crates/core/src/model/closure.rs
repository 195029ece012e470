//! Least fixpoint of a statement set under symmetry, decomposition, weak
//! union and contraction.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{DependencyModel, ModelError, Origin, Statement, VarSet};

/// Default cap on the universe size accepted by [`close_semigraphoid`].
pub const DEFAULT_CLOSURE_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    pub max_vars: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            max_vars: DEFAULT_CLOSURE_CAP,
        }
    }
}

/// Every statement derivable from `s` in one step, given the statements in
/// `known` (reachable through `partners`, keyed by `(W, Z)`).
///
/// Symmetry is implicit in the canonical form, so each rule is applied to
/// both orientations of `s`.
fn one_step<F>(s: &Statement, partners: &HashMap<(VarSet, VarSet), Vec<VarSet>>, known: F, out: &mut Vec<Statement>)
where
    F: Fn(&Statement) -> bool,
{
    for (w, r, z) in s.orientations() {
        for y in r.proper_nonempty_subsets() {
            // decomposition: I(W, XY | Z) => I(W, Y | Z)
            out.push(Statement::normalized(w, y, z));
            // weak union: I(W, XY | Z) => I(W, X | YZ)
            out.push(Statement::normalized(w, r - y, z | y));
        }
        // contraction with s as I(W, Y | Z): needs I(W, X | YZ)
        if let Some(xs) = partners.get(&(w, z | r)) {
            for &x in xs {
                out.push(Statement::normalized(w, x | r, z));
            }
        }
        // contraction with s as I(W, X | C), C = YZ: needs I(W, Y | Z)
        for y in z.subsets().filter(|y| !y.is_empty()) {
            let first = Statement::normalized(w, y, z - y);
            if known(&first) {
                out.push(Statement::normalized(w, r | y, z - y));
            }
        }
    }
}

fn index_insert(partners: &mut HashMap<(VarSet, VarSet), Vec<VarSet>>, s: &Statement) {
    for (w, r, z) in s.orientations() {
        partners.entry((w, z)).or_default().push(r);
    }
}

/// Closes `basis` under the four axioms over a universe of `universe_len`
/// variables.
///
/// Worklist fixpoint: a statement is indexed as soon as it is discovered and
/// expanded when it leaves the queue, so every contraction pair is examined
/// by whichever member is expanded second.
pub fn close_semigraphoid<I>(
    basis: I,
    universe_len: usize,
    config: ClosureConfig,
) -> Result<DependencyModel, ModelError>
where
    I: IntoIterator<Item = Statement>,
{
    if universe_len > config.max_vars {
        return Err(ModelError::UniverseTooLarge {
            size: universe_len,
            cap: config.max_vars,
        });
    }
    let mut seen_basis = HashSet::new();
    let mut ordered_basis = Vec::new();
    for s in basis {
        let s = s.check_universe(universe_len)?;
        if seen_basis.insert(s) {
            ordered_basis.push(s);
        }
    }

    let mut known: HashSet<Statement> = HashSet::new();
    let mut partners: HashMap<(VarSet, VarSet), Vec<VarSet>> = HashMap::new();
    let mut queue: VecDeque<Statement> = VecDeque::new();
    for &s in &ordered_basis {
        if known.insert(s) {
            index_insert(&mut partners, &s);
            queue.push_back(s);
        }
    }

    let mut derived = Vec::new();
    while let Some(s) = queue.pop_front() {
        derived.clear();
        one_step(&s, &partners, |t| known.contains(t), &mut derived);
        for &t in &derived {
            if known.insert(t) {
                index_insert(&mut partners, &t);
                queue.push_back(t);
            }
        }
    }

    Ok(DependencyModel {
        universe_len,
        statements: known.into_iter().collect::<BTreeSet<_>>(),
        origin: Origin::ClosedBasis {
            basis: ordered_basis,
        },
    })
}

/// First statement (in model order) derivable in one step from `model` that
/// is missing from it, or `None` when the model is closed.
pub(crate) fn closure_gap(model: &DependencyModel) -> Option<Statement> {
    let mut partners: HashMap<(VarSet, VarSet), Vec<VarSet>> = HashMap::new();
    for s in &model.statements {
        index_insert(&mut partners, s);
    }
    let mut derived = Vec::new();
    for s in &model.statements {
        derived.clear();
        one_step(s, &partners, |t| model.statements.contains(t), &mut derived);
        if let Some(t) = derived.iter().find(|t| !model.statements.contains(t)) {
            return Some(*t);
        }
    }
    None
}
