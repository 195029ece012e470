//! d-separation: a reachability engine, a path-enumeration oracle, and
//! extraction of a DAG's complete independence model.
//!
//! A node is *active* given `Z` when it has a directed path (possibly of
//! length zero) to a member of `Z`. A path is active when each head-to-head
//! node on it is active and no other node on it lies in `Z`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Dag, Graph};
use crate::model::{DependencyModel, Statement, VarId, VarSet};

/// Default cap on the node count accepted by [`full_model`].
pub const DEFAULT_FULL_MODEL_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsepError {
    #[error("query sets must be pairwise disjoint with nonempty X and Y")]
    InvalidQuery,
    #[error("query mentions node {0:?} outside the graph")]
    OutOfRange(VarId),
    #[error("{size} nodes exceed the full-model cap of {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
}

/// Is `x` d-separated from `y` given `z`?
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DsepQuery {
    pub x: VarSet,
    pub y: VarSet,
    pub z: VarSet,
}

impl DsepQuery {
    pub fn new(x: VarSet, y: VarSet, z: VarSet) -> Result<Self, DsepError> {
        if x.is_empty() || y.is_empty() || !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
            return Err(DsepError::InvalidQuery);
        }
        Ok(DsepQuery { x, y, z })
    }

    pub fn from_statement(s: &Statement) -> Self {
        DsepQuery {
            x: s.lhs(),
            y: s.rhs(),
            z: s.cond(),
        }
    }

    fn validate(&self, d: &Dag) -> Result<(), DsepError> {
        DsepQuery::new(self.x, self.y, self.z)?;
        let outside = (self.x | self.y | self.z) - d.nodes();
        match outside.min() {
            Some(v) => Err(DsepError::OutOfRange(v)),
            None => Ok(()),
        }
    }
}

/// Reachability over (node, direction-of-arrival) states restricted by the
/// ancestor set of `Z`.
pub fn d_separated(d: &Dag, q: &DsepQuery) -> Result<bool, DsepError> {
    q.validate(d)?;
    Ok(!reaches(d, q.x, q.y, q.z))
}

pub(crate) fn reaches(d: &Dag, x: VarSet, y: VarSet, z: VarSet) -> bool {
    let active = d.ancestors_of(z);
    // `up`: entered from a child (or a start node); `down`: entered from a parent.
    let mut up_seen = x;
    let mut down_seen = VarSet::EMPTY;
    let mut up_todo = x;
    let mut down_todo = VarSet::EMPTY;
    loop {
        if let Some(v) = up_todo.min() {
            up_todo.remove(v);
            if z.contains(v) {
                continue;
            }
            if y.contains(v) {
                return true;
            }
            let p = d.parents(v) - up_seen;
            up_seen = up_seen | p;
            up_todo = up_todo | p;
            let c = d.children(v) - down_seen;
            down_seen = down_seen | c;
            down_todo = down_todo | c;
        } else if let Some(v) = down_todo.min() {
            down_todo.remove(v);
            if !z.contains(v) {
                if y.contains(v) {
                    return true;
                }
                let c = d.children(v) - down_seen;
                down_seen = down_seen | c;
                down_todo = down_todo | c;
            }
            if active.contains(v) {
                let p = d.parents(v) - up_seen;
                up_seen = up_seen | p;
                up_todo = up_todo | p;
            }
        } else {
            return false;
        }
    }
}

/// Literal reading of the definition: enumerate every simple path between
/// `X` and `Y` and test each for activity.
pub fn d_separated_naive(d: &Dag, q: &DsepQuery) -> Result<bool, DsepError> {
    q.validate(d)?;
    let n = d.node_count();
    let edge = |a: usize, b: usize| d.children(VarId::new(a)).contains(VarId::new(b));
    let adjacent = |a: usize, b: usize| edge(a, b) || edge(b, a);
    let reaches_z = |start: usize| -> bool {
        let mut stack = vec![start];
        let mut seen = vec![false; n];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            if q.z.contains(VarId::new(v)) {
                return true;
            }
            for (w, seen_w) in seen.iter_mut().enumerate() {
                if edge(v, w) && !*seen_w {
                    *seen_w = true;
                    stack.push(w);
                }
            }
        }
        false
    };
    let path_active = |path: &[usize]| -> bool {
        path.windows(3).all(|w| {
            let (prev, mid, next) = (w[0], w[1], w[2]);
            if edge(prev, mid) && edge(next, mid) {
                reaches_z(mid)
            } else {
                !q.z.contains(VarId::new(mid))
            }
        })
    };

    fn extend(
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        target: usize,
        n: usize,
        adjacent: &dyn Fn(usize, usize) -> bool,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let last = *path.last().unwrap();
        if last == target {
            return found(path);
        }
        for w in 0..n {
            if !on_path[w] && adjacent(last, w) {
                on_path[w] = true;
                path.push(w);
                let hit = extend(path, on_path, target, n, adjacent, found);
                path.pop();
                on_path[w] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }

    for a in q.x {
        for b in q.y {
            let mut path = vec![a.index()];
            let mut on_path = vec![false; n];
            on_path[a.index()] = true;
            let mut found = |p: &[usize]| path_active(p);
            if extend(&mut path, &mut on_path, b.index(), n, &adjacent, &mut found) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every canonical statement that holds in `d`, for graphs of at most
/// [`DEFAULT_FULL_MODEL_CAP`] nodes.
pub fn full_model(d: &Dag) -> Result<DependencyModel, DsepError> {
    full_model_with_cap(d, DEFAULT_FULL_MODEL_CAP)
}

pub fn full_model_with_cap(d: &Dag, cap: usize) -> Result<DependencyModel, DsepError> {
    let n = d.node_count();
    if n > cap {
        return Err(DsepError::UniverseTooLarge { size: n, cap });
    }
    let all = d.nodes();
    let mut statements = BTreeSet::new();
    for cond in all.subsets() {
        let rest = all - cond;
        for sides in rest.subsets().filter(|s| s.len() >= 2) {
            let pivot = VarSet::singleton(sides.min().unwrap());
            // lhs holds the smallest member, so each statement is visited once
            for lhs in (sides - pivot).subsets().map(|s| s | pivot) {
                let rhs = sides - lhs;
                if rhs.is_empty() {
                    continue;
                }
                if !reaches(d, lhs, rhs, cond) {
                    statements.insert(Statement::normalized(lhs, rhs, cond));
                }
            }
        }
    }
    Ok(DependencyModel::explicit(n, statements).expect("statements range over the graph's nodes"))
}
