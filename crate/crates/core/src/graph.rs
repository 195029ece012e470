//! Partially directed and fully directed acyclic graphs over a dense node
//! range, stored as per-node bit vectors.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{VarId, VarSet, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {0:?} is out of range")]
    NodeOutOfRange(VarId),
    #[error("self-loop at {0:?}")]
    SelfLoop(VarId),
    #[error("more than one edge between {0:?} and {1:?}")]
    DuplicateEdge(VarId, VarId),
    #[error("graph contains a directed cycle")]
    CycleDetected,
    #[error("orienting {tail:?} -> {head:?} would close a directed cycle")]
    WouldCreateCycle { tail: VarId, head: VarId },
    #[error("edge is already directed {head:?} -> {tail:?}")]
    ConflictingOrientation { tail: VarId, head: VarId },
    #[error("no edge between {0:?} and {1:?}")]
    MissingEdge(VarId, VarId),
    #[error("graphs have different node sets ({0} vs {1} nodes)")]
    NodeSetMismatch(usize, usize),
    #[error("{0} nodes exceed the supported maximum")]
    TooManyNodes(usize),
}

/// An adjacency with orientation forgotten, stored low-index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub lo: VarId,
    pub hi: VarId,
}

impl Link {
    pub fn new(a: VarId, b: VarId) -> Self {
        Link {
            lo: a.min(b),
            hi: a.max(b),
        }
    }
}

/// A vee structure `left -> center <- right` with `left`, `right`
/// nonadjacent; stored with `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vee {
    pub left: VarId,
    pub center: VarId,
    pub right: VarId,
}

impl Vee {
    pub fn new(a: VarId, center: VarId, c: VarId) -> Self {
        Vee {
            left: a.min(c),
            center,
            right: a.max(c),
        }
    }
}

/// Read access shared by [`Pdag`] and [`Dag`].
pub trait Graph {
    fn node_count(&self) -> usize;
    fn parents(&self, v: VarId) -> VarSet;
    fn children(&self, v: VarId) -> VarSet;

    fn undirected_neighbors(&self, _v: VarId) -> VarSet {
        VarSet::EMPTY
    }

    fn nodes(&self) -> VarSet {
        VarSet::full(self.node_count())
    }

    fn neighbors(&self, v: VarId) -> VarSet {
        self.parents(v) | self.children(v) | self.undirected_neighbors(v)
    }

    fn is_adjacent(&self, a: VarId, b: VarId) -> bool {
        self.neighbors(a).contains(b)
    }

    fn skeleton(&self) -> BTreeSet<Link> {
        let mut out = BTreeSet::new();
        for a in self.nodes() {
            for b in self.neighbors(a) {
                if a < b {
                    out.insert(Link { lo: a, hi: b });
                }
            }
        }
        out
    }

    /// Directed edges as `(tail, head)`, sorted.
    fn directed_edges(&self) -> Vec<(VarId, VarId)> {
        self.nodes()
            .iter()
            .flat_map(|t| self.children(t).iter().map(move |h| (t, h)))
            .collect()
    }

    fn vee_structures(&self) -> BTreeSet<Vee> {
        let mut out = BTreeSet::new();
        for b in self.nodes() {
            let pa = self.parents(b);
            for a in pa {
                for c in pa - VarSet::full(a.index() + 1) {
                    if !self.is_adjacent(a, c) {
                        out.insert(Vee {
                            left: a,
                            center: b,
                            right: c,
                        });
                    }
                }
            }
        }
        out
    }

    /// Nodes reachable from `from` along directed edges, `from` included.
    fn descendants(&self, from: VarId) -> VarSet {
        let mut seen = VarSet::singleton(from);
        let mut frontier = seen;
        while let Some(v) = frontier.min() {
            frontier.remove(v);
            let next = self.children(v) - seen;
            seen = seen | next;
            frontier = frontier | next;
        }
        seen
    }

    /// Directed reachability; undirected edges do not conduct and every node
    /// reaches itself.
    fn has_directed_path(&self, from: VarId, to: VarId) -> bool {
        self.descendants(from).contains(to)
    }
}

fn check_node(n: usize, v: VarId) -> Result<(), GraphError> {
    if v.index() < n {
        Ok(())
    } else {
        Err(GraphError::NodeOutOfRange(v))
    }
}

/// Kahn's algorithm, smallest ready index first. `None` if a cycle remains.
fn kahn_order<G: Graph + ?Sized>(g: &G) -> Option<Vec<VarId>> {
    let n = g.node_count();
    let mut placed = VarSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let ready = g
            .nodes()
            .iter()
            .find(|&v| !placed.contains(v) && g.parents(v).is_subset(placed))?;
        placed.insert(ready);
        order.push(ready);
    }
    Some(order)
}

/// A graph with directed and undirected edges and no directed cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pdag {
    n: usize,
    parents: Vec<VarSet>,
    children: Vec<VarSet>,
    undirected: Vec<VarSet>,
}

impl Pdag {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VARS, "{n} nodes exceed the supported maximum");
        Pdag {
            n,
            parents: vec![VarSet::EMPTY; n],
            children: vec![VarSet::EMPTY; n],
            undirected: vec![VarSet::EMPTY; n],
        }
    }

    /// Every pair joined by an undirected edge.
    pub fn complete(n: usize) -> Self {
        let mut g = Pdag::empty(n);
        for v in 0..n {
            g.undirected[v] = VarSet::full(n).without(VarId::new(v));
        }
        g
    }

    pub fn new(
        n: usize,
        directed: &[(VarId, VarId)],
        undirected: &[(VarId, VarId)],
    ) -> Result<Self, GraphError> {
        if n > MAX_VARS {
            return Err(GraphError::TooManyNodes(n));
        }
        let mut g = Pdag::empty(n);
        for &(a, b) in directed.iter().chain(undirected) {
            check_node(n, a)?;
            check_node(n, b)?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if g.is_adjacent(a, b) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.add_undirected(a, b);
        }
        for &(t, h) in directed {
            g.set_directed(t, h);
        }
        if g.has_directed_cycle() {
            return Err(GraphError::CycleDetected);
        }
        Ok(g)
    }

    pub fn is_fully_directed(&self) -> bool {
        self.undirected.iter().all(|s| s.is_empty())
    }

    /// Undirected edges, sorted.
    pub fn undirected_edges(&self) -> Vec<Link> {
        let mut out = Vec::new();
        for (a, &nb) in self.undirected.iter().enumerate() {
            let a = VarId::new(a);
            for b in nb {
                if a < b {
                    out.push(Link { lo: a, hi: b });
                }
            }
        }
        out
    }

    pub fn first_undirected_edge(&self) -> Option<Link> {
        self.undirected.iter().enumerate().find_map(|(a, nb)| {
            let a = VarId::new(a);
            let b = (*nb - VarSet::full(a.index() + 1)).min()?;
            Some(Link { lo: a, hi: b })
        })
    }

    pub fn is_undirected(&self, a: VarId, b: VarId) -> bool {
        self.undirected[a.index()].contains(b)
    }

    pub fn is_directed(&self, tail: VarId, head: VarId) -> bool {
        self.children[tail.index()].contains(head)
    }

    /// Returns a copy with `tail -> head`. A no-op when already so directed.
    pub fn orient(&self, tail: VarId, head: VarId) -> Result<Pdag, GraphError> {
        check_node(self.n, tail)?;
        check_node(self.n, head)?;
        if self.is_directed(tail, head) {
            return Ok(self.clone());
        }
        if self.is_directed(head, tail) {
            return Err(GraphError::ConflictingOrientation { tail, head });
        }
        if !self.is_undirected(tail, head) {
            return Err(GraphError::MissingEdge(tail, head));
        }
        if self.has_directed_path(head, tail) {
            return Err(GraphError::WouldCreateCycle { tail, head });
        }
        let mut g = self.clone();
        g.set_directed(tail, head);
        Ok(g)
    }

    pub fn has_directed_cycle(&self) -> bool {
        kahn_order(self).is_none()
    }

    /// The underlying DAG when no undirected edge remains.
    pub fn to_dag(&self) -> Option<Dag> {
        if !self.is_fully_directed() || self.has_directed_cycle() {
            return None;
        }
        Some(Dag {
            n: self.n,
            parents: self.parents.clone(),
            children: self.children.clone(),
        })
    }

    pub(crate) fn add_undirected(&mut self, a: VarId, b: VarId) {
        self.undirected[a.index()].insert(b);
        self.undirected[b.index()].insert(a);
    }

    pub(crate) fn remove_edge(&mut self, a: VarId, b: VarId) {
        for (x, y) in [(a, b), (b, a)] {
            self.undirected[x.index()].remove(y);
            self.children[x.index()].remove(y);
            self.parents[x.index()].remove(y);
        }
    }

    /// Directs an edge without any validity check; callers own the
    /// acyclicity invariant.
    pub(crate) fn set_directed(&mut self, tail: VarId, head: VarId) {
        self.undirected[tail.index()].remove(head);
        self.undirected[head.index()].remove(tail);
        self.parents[tail.index()].remove(head);
        self.children[head.index()].remove(tail);
        self.children[tail.index()].insert(head);
        self.parents[head.index()].insert(tail);
    }
}

impl Graph for Pdag {
    fn node_count(&self) -> usize {
        self.n
    }
    fn parents(&self, v: VarId) -> VarSet {
        self.parents[v.index()]
    }
    fn children(&self, v: VarId) -> VarSet {
        self.children[v.index()]
    }
    fn undirected_neighbors(&self, v: VarId) -> VarSet {
        self.undirected[v.index()]
    }
}

/// A directed acyclic graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dag {
    n: usize,
    parents: Vec<VarSet>,
    children: Vec<VarSet>,
}

impl Dag {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VARS, "{n} nodes exceed the supported maximum");
        Dag {
            n,
            parents: vec![VarSet::EMPTY; n],
            children: vec![VarSet::EMPTY; n],
        }
    }

    pub fn new(n: usize, edges: &[(VarId, VarId)]) -> Result<Self, GraphError> {
        if n > MAX_VARS {
            return Err(GraphError::TooManyNodes(n));
        }
        let mut d = Dag::empty(n);
        for &(t, h) in edges {
            check_node(n, t)?;
            check_node(n, h)?;
            if t == h {
                return Err(GraphError::SelfLoop(t));
            }
            if d.is_adjacent(t, h) {
                return Err(GraphError::DuplicateEdge(t, h));
            }
            d.children[t.index()].insert(h);
            d.parents[h.index()].insert(t);
        }
        if kahn_order(&d).is_none() {
            return Err(GraphError::CycleDetected);
        }
        Ok(d)
    }

    /// Convenience constructor from raw index pairs.
    ///
    /// # Panics
    ///
    /// Panics if the edges do not form a DAG on `n` nodes.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Self {
        let edges: Vec<_> = edges
            .iter()
            .map(|&(a, b)| (VarId::new(a), VarId::new(b)))
            .collect();
        Dag::new(n, &edges).expect("edges form a DAG")
    }

    pub fn has_edge(&self, tail: VarId, head: VarId) -> bool {
        self.children[tail.index()].contains(head)
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(|c| c.len()).sum()
    }

    /// Deterministic topological order, smallest ready index first.
    pub fn topological_order(&self) -> Result<Vec<VarId>, GraphError> {
        kahn_order(self).ok_or(GraphError::CycleDetected)
    }

    /// `set` together with every ancestor of a member of `set`.
    pub fn ancestors_of(&self, set: VarSet) -> VarSet {
        let mut seen = set;
        let mut frontier = set;
        while let Some(v) = frontier.min() {
            frontier.remove(v);
            let next = self.parents[v.index()] - seen;
            seen = seen | next;
            frontier = frontier | next;
        }
        seen
    }

    /// Same skeleton and same vee structures.
    pub fn is_equivalent(&self, other: &Dag) -> Result<bool, GraphError> {
        if self.n != other.n {
            return Err(GraphError::NodeSetMismatch(self.n, other.n));
        }
        Ok(self.skeleton() == other.skeleton() && self.vee_structures() == other.vee_structures())
    }
}

impl Graph for Dag {
    fn node_count(&self) -> usize {
        self.n
    }
    fn parents(&self, v: VarId) -> VarSet {
        self.parents[v.index()]
    }
    fn children(&self, v: VarId) -> VarSet {
        self.children[v.index()]
    }
}

impl From<&Dag> for Pdag {
    fn from(d: &Dag) -> Pdag {
        Pdag {
            n: d.n,
            parents: d.parents.clone(),
            children: d.children.clone(),
            undirected: vec![VarSet::EMPTY; d.n],
        }
    }
}
