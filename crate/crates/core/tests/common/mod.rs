#![allow(dead_code)]

use dagiso::{Dag, Graph, Pdag, Statement, VarId, VarSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn v(i: usize) -> VarId {
    VarId::new(i)
}

pub fn set(ids: &[usize]) -> VarSet {
    ids.iter().map(|&i| VarId::new(i)).collect()
}

pub fn st(a: &[usize], b: &[usize], c: &[usize]) -> Statement {
    Statement::new(set(a), set(b), set(c)).unwrap()
}

/// Random DAG: shuffle a node order, then keep each forward pair with
/// probability `p`.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Dag::from_indices(n, &edges)
}

/// Every canonical statement over `n` variables.
pub fn all_statements(n: usize) -> Vec<Statement> {
    let all = VarSet::full(n);
    let mut out = Vec::new();
    for cond in all.subsets() {
        for sides in (all - cond).subsets().filter(|s| s.len() >= 2) {
            let pivot = VarSet::singleton(sides.min().unwrap());
            for lhs in (sides - pivot).subsets().map(|s| s | pivot) {
                if lhs != sides {
                    out.push(Statement::new(lhs, sides - lhs, cond).unwrap());
                }
            }
        }
    }
    out.sort();
    out
}

/// All topological orders of `d`, by exhaustive permutation search.
pub fn all_topological_orders(d: &Dag) -> Vec<Vec<VarId>> {
    fn go(d: &Dag, placed: VarSet, prefix: &mut Vec<VarId>, out: &mut Vec<Vec<VarId>>) {
        if prefix.len() == d.node_count() {
            out.push(prefix.clone());
            return;
        }
        for v in d.nodes() - placed {
            if d.parents(v).is_subset(placed) {
                prefix.push(v);
                go(d, placed.with(v), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, VarSet::EMPTY, &mut Vec::new(), &mut out);
    out
}

/// Orients a random subset of `g`'s undirected edges. With `along`, each
/// chosen edge follows that DAG; otherwise its direction is random. Returns
/// `None` if the result has a directed cycle.
pub fn random_partial_orientation<R: Rng>(
    rng: &mut R,
    g: &Pdag,
    along: Option<&Dag>,
    p: f64,
) -> Option<Pdag> {
    let mut directed = g.directed_edges();
    let mut undirected = Vec::new();
    for link in g.undirected_edges() {
        if rng.gen_bool(p) {
            let forward = match along {
                Some(d) => d.has_edge(link.lo, link.hi),
                None => rng.gen_bool(0.5),
            };
            directed.push(if forward { (link.lo, link.hi) } else { (link.hi, link.lo) });
        } else {
            undirected.push((link.lo, link.hi));
        }
    }
    Pdag::new(g.node_count(), &directed, &undirected).ok()
}
