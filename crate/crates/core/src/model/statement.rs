use std::fmt;

use super::{ModelError, Universe, VarSet};

/// A conditional independence assertion `I(lhs, rhs | cond)`.
///
/// Values are always in symmetry-normal form: the side holding the smallest
/// variable of `lhs ∪ rhs` is stored as `lhs`. Since the two sides are
/// disjoint this agrees with comparing their sorted member lists
/// lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    lhs: VarSet,
    rhs: VarSet,
    cond: VarSet,
}

impl Statement {
    pub fn new(lhs: VarSet, rhs: VarSet, cond: VarSet) -> Result<Self, ModelError> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(ModelError::EmptySide);
        }
        if !lhs.is_disjoint(rhs) || !lhs.is_disjoint(cond) || !rhs.is_disjoint(cond) {
            return Err(ModelError::OverlappingSets);
        }
        Ok(Self::normalized(lhs, rhs, cond))
    }

    /// Caller guarantees disjoint, nonempty sides.
    pub(crate) fn normalized(lhs: VarSet, rhs: VarSet, cond: VarSet) -> Self {
        debug_assert!(!lhs.is_empty() && !rhs.is_empty());
        debug_assert!(lhs.is_disjoint(rhs) && lhs.is_disjoint(cond) && rhs.is_disjoint(cond));
        if lhs.min() < rhs.min() {
            Statement { lhs, rhs, cond }
        } else {
            Statement {
                lhs: rhs,
                rhs: lhs,
                cond,
            }
        }
    }

    pub fn lhs(&self) -> VarSet {
        self.lhs
    }

    pub fn rhs(&self) -> VarSet {
        self.rhs
    }

    pub fn cond(&self) -> VarSet {
        self.cond
    }

    /// All variables mentioned.
    pub fn scope(&self) -> VarSet {
        self.lhs | self.rhs | self.cond
    }

    /// Both sides are single variables.
    pub fn is_elementary(&self) -> bool {
        self.lhs.len() == 1 && self.rhs.len() == 1
    }

    /// The two orientations `(W, R, Z)` of `I(W, R | Z)` implied by symmetry.
    pub fn orientations(&self) -> [(VarSet, VarSet, VarSet); 2] {
        [
            (self.lhs, self.rhs, self.cond),
            (self.rhs, self.lhs, self.cond),
        ]
    }

    pub(crate) fn check_universe(self, universe_len: usize) -> Result<Self, ModelError> {
        let extra = self.scope() - VarSet::full(universe_len);
        match extra.min() {
            Some(v) => Err(ModelError::UnknownVariable { index: v.index() }),
            None => Ok(self),
        }
    }

    /// Renders in the input-file syntax, e.g. `I(a ; c | b)`.
    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        DisplayStatement {
            statement: self,
            universe,
        }
    }
}

impl fmt::Debug for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({:?}, {:?} | {:?})", self.lhs, self.rhs, self.cond)
    }
}

struct DisplayStatement<'a> {
    statement: &'a Statement,
    universe: &'a Universe,
}

impl fmt::Display for DisplayStatement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.universe;
        let s = self.statement;
        write!(
            f,
            "I({} ; {} | {})",
            u.format_set(s.lhs),
            u.format_set(s.rhs),
            u.format_set(s.cond)
        )
    }
}

/// Validates a raw triple against a universe of `universe_len` variables and
/// returns its symmetry-normal representative.
pub fn canonicalize(
    lhs: VarSet,
    rhs: VarSet,
    cond: VarSet,
    universe_len: usize,
) -> Result<Statement, ModelError> {
    Statement::new(lhs, rhs, cond)?.check_universe(universe_len)
}
