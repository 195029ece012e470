//! Input generators shared by the benchmarks.

use dagiso::{Dag, DependencyModel, Statement, VarId, VarSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random DAG over a shuffled node order, each forward pair kept with
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

/// Explicit model of `size` random elementary statements over `n`
/// variables (fewer if draws repeat).
pub fn random_elementary_model<R: Rng>(rng: &mut R, n: usize, size: usize) -> DependencyModel {
    let statements = (0..size).map(|_| {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let cond: VarSet = (0..n)
            .filter(|&i| i != a && i != b && rng.gen_bool(0.5))
            .map(VarId::new)
            .collect();
        Statement::new(VarSet::singleton(VarId::new(a)), VarSet::singleton(VarId::new(b)), cond)
            .expect("distinct singletons")
    });
    DependencyModel::explicit(n, statements).expect("statements fit the universe")
}
