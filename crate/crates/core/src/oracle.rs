//! Brute-force ground truth over small node counts: every labeled DAG,
//! exhaustive dag-isomorphism search, and Markov equivalence classes.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::dsep::full_model;
use crate::graph::{Dag, Graph, Link, Pdag, Vee};
use crate::model::{DependencyModel, VarId};

/// Largest node count [`enumerate_dags`] accepts.
pub const MAX_ENUMERATION_NODES: usize = 5;
/// Largest number of undirected edges [`extensions`] accepts.
pub const MAX_EXTENSION_EDGES: usize = 16;
/// Largest universe [`is_dag_isomorphic_bruteforce`] accepts.
pub const MAX_BRUTEFORCE_NODES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} nodes exceed the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("{edges} undirected edges exceed the extension limit of {limit}")]
    TooManyUndirected { edges: usize, limit: usize },
    #[error("model ranges over {model} variables, expected {expected}")]
    UniverseMismatch { model: usize, expected: usize },
}

/// All labeled DAGs on `n` nodes, in enumeration order.
#[derive(Clone, Debug)]
pub struct DagSpace {
    n: usize,
    dags: Vec<Dag>,
}

impl DagSpace {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.dags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dags.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Dag> {
        self.dags.iter()
    }

    pub fn dags(&self) -> &[Dag] {
        &self.dags
    }
}

impl<'a> IntoIterator for &'a DagSpace {
    type Item = &'a Dag;
    type IntoIter = std::slice::Iter<'a, Dag>;
    fn into_iter(self) -> Self::IntoIter {
        self.dags.iter()
    }
}

/// Enumerates every assignment of {absent, forward, backward} to the node
/// pairs and keeps the acyclic ones.
pub fn enumerate_dags(n: usize) -> Result<DagSpace, OracleError> {
    if n > MAX_ENUMERATION_NODES {
        return Err(OracleError::TooLarge {
            n,
            limit: MAX_ENUMERATION_NODES,
        });
    }
    let pairs: Vec<(VarId, VarId)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (VarId::new(a), VarId::new(b))))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut dags = Vec::new();
    let mut edges = Vec::with_capacity(pairs.len());
    for code in 0..total {
        edges.clear();
        let mut rest = code;
        for &(a, b) in &pairs {
            match rest % 3 {
                1 => edges.push((a, b)),
                2 => edges.push((b, a)),
                _ => {}
            }
            rest /= 3;
        }
        if let Ok(d) = Dag::new(n, &edges) {
            dags.push(d);
        }
    }
    Ok(DagSpace { n, dags })
}

/// Number of labeled DAGs on `n` nodes from the inclusion-exclusion
/// recurrence over the set of source nodes.
pub fn labeled_dag_count(n: usize) -> u128 {
    fn binom(n: usize, k: usize) -> i128 {
        (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
    }
    let mut a = vec![1i128];
    for m in 1..=n {
        let mut total = 0i128;
        for k in 1..=m {
            let term = binom(m, k) * (1i128 << (k * (m - k))) * a[m - k];
            total += if k % 2 == 1 { term } else { -term };
        }
        a.push(total);
    }
    a[n] as u128
}

/// First enumerated DAG whose complete independence model equals `m`.
pub fn is_dag_isomorphic_bruteforce(m: &DependencyModel, n: usize) -> Result<Option<Dag>, OracleError> {
    Ok(IsomorphismOracle::new(n)?.find(m)?.cloned())
}

/// Every DAG on `n` nodes paired with its complete model, for repeated
/// brute-force queries.
#[derive(Clone, Debug)]
pub struct IsomorphismOracle {
    n: usize,
    entries: Vec<(Dag, DependencyModel)>,
}

impl IsomorphismOracle {
    pub fn new(n: usize) -> Result<Self, OracleError> {
        if n > MAX_BRUTEFORCE_NODES {
            return Err(OracleError::TooLarge {
                n,
                limit: MAX_BRUTEFORCE_NODES,
            });
        }
        let entries = enumerate_dags(n)?
            .dags
            .into_iter()
            .map(|d| {
                let m = full_model(&d).expect("within cap");
                (d, m)
            })
            .collect();
        Ok(IsomorphismOracle { n, entries })
    }

    pub fn find(&self, m: &DependencyModel) -> Result<Option<&Dag>, OracleError> {
        if m.universe_len() != self.n {
            return Err(OracleError::UniverseMismatch {
                model: m.universe_len(),
                expected: self.n,
            });
        }
        Ok(self
            .entries
            .iter()
            .find(|(_, full)| full.statements() == m.statements())
            .map(|(d, _)| d))
    }

    pub fn entries(&self) -> &[(Dag, DependencyModel)] {
        &self.entries
    }
}

/// Every DAG with the skeleton and vee structures of `g`, found by trying
/// all orientations of its undirected edges.
pub fn extensions(g: &Pdag) -> Result<Vec<Dag>, OracleError> {
    let undirected = g.undirected_edges();
    if undirected.len() > MAX_EXTENSION_EDGES {
        return Err(OracleError::TooManyUndirected {
            edges: undirected.len(),
            limit: MAX_EXTENSION_EDGES,
        });
    }
    let vees = g.vee_structures();
    let fixed = g.directed_edges();
    let mut out = Vec::new();
    for bits in 0u32..1 << undirected.len() {
        let mut edges = fixed.clone();
        for (i, link) in undirected.iter().enumerate() {
            edges.push(if bits >> i & 1 == 0 {
                (link.lo, link.hi)
            } else {
                (link.hi, link.lo)
            });
        }
        if let Ok(d) = Dag::new(g.node_count(), &edges) {
            if d.vee_structures() == vees {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Key under which Markov-equivalent DAGs coincide.
pub type ClassKey = (BTreeSet<Link>, BTreeSet<Vee>);

pub fn class_key(d: &Dag) -> ClassKey {
    (d.skeleton(), d.vee_structures())
}

/// DAGs on `n` nodes grouped by skeleton and vee structures, in key order.
pub fn equivalence_classes(n: usize) -> Result<Vec<Vec<Dag>>, OracleError> {
    let space = enumerate_dags(n)?;
    let mut classes: BTreeMap<ClassKey, Vec<Dag>> = BTreeMap::new();
    for d in space.dags {
        classes.entry(class_key(&d)).or_default().push(d);
    }
    Ok(classes.into_values().collect())
}
