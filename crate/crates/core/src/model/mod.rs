//! Dependency models: canonical statements, semigraphoid closure and the
//! separator queries the construction needs.

mod closure;
mod statement;
mod varset;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub(crate) use closure::closure_gap;
pub use closure::{close_semigraphoid, ClosureConfig, DEFAULT_CLOSURE_CAP};
pub use statement::{canonicalize, Statement};
pub use varset::{Members, Subsets, Universe, VarId, VarSet, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("lhs, rhs and conditioning sets must be pairwise disjoint")]
    OverlappingSets,
    #[error("both sides of a statement must be nonempty")]
    EmptySide,
    #[error("variable index {index} is outside the declared universe")]
    UnknownVariable { index: usize },
    #[error("universe of {size} variables exceeds the closure cap of {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("variable {0:?} declared twice")]
    DuplicateName(String),
    #[error("{count} variables exceed the supported maximum of {MAX_VARS}")]
    TooManyVariables { count: usize },
}

/// Where a model's statement set came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// The statements are the complete model as listed.
    Explicit,
    /// The statements are the closure of `basis` (deduplicated, input order).
    ClosedBasis { basis: Vec<Statement> },
}

/// A set of canonical statements over a universe of `universe_len` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyModel {
    universe_len: usize,
    statements: BTreeSet<Statement>,
    origin: Origin,
}

impl DependencyModel {
    /// Takes `statements` as the complete model. No closure is applied.
    pub fn explicit<I>(universe_len: usize, statements: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = Statement>,
    {
        if universe_len > MAX_VARS {
            return Err(ModelError::TooManyVariables {
                count: universe_len,
            });
        }
        let statements = statements
            .into_iter()
            .map(|s| s.check_universe(universe_len))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(DependencyModel {
            universe_len,
            statements,
            origin: Origin::Explicit,
        })
    }

    pub fn universe_len(&self) -> usize {
        self.universe_len
    }

    pub fn statements(&self) -> &BTreeSet<Statement> {
        &self.statements
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn is_closed_basis(&self) -> bool {
        matches!(self.origin, Origin::ClosedBasis { .. })
    }

    /// Statements that generate the model: the basis for closed models, every
    /// statement otherwise.
    pub fn generators(&self) -> Box<dyn Iterator<Item = &Statement> + '_> {
        match &self.origin {
            Origin::Explicit => Box::new(self.statements.iter()),
            Origin::ClosedBasis { basis } => Box::new(basis.iter()),
        }
    }

    pub fn contains(&self, s: &Statement) -> Result<bool, ModelError> {
        let s = s.check_universe(self.universe_len)?;
        Ok(self.statements.contains(&s))
    }

    /// Some `S` with `I(a, b | S)` in the model.
    ///
    /// Closed-basis models answer from the basis alone: any basis statement
    /// `I(A', B' | C)` with `a ∈ A'` and `b ∈ B'` (either orientation) yields
    /// `S = C ∪ (A' ∖ a) ∪ (B' ∖ b)` by decomposition and weak union, and no
    /// derivation can separate `a` from `b` unless such a basis statement
    /// exists. Explicit models are scanned for the literal statement.
    pub fn has_separator(&self, a: VarId, b: VarId) -> Option<VarSet> {
        assert_ne!(a, b, "separator query needs two distinct variables");
        match &self.origin {
            Origin::Explicit => self.has_separator_exhaustive(a, b),
            Origin::ClosedBasis { basis } => basis.iter().find_map(|s| fast_separator(s, a, b)),
        }
    }

    /// Scans the materialized statement set for `I(a, b | S)` and returns the
    /// smallest such `S` in set order.
    pub fn has_separator_exhaustive(&self, a: VarId, b: VarId) -> Option<VarSet> {
        assert_ne!(a, b, "separator query needs two distinct variables");
        let lhs = VarSet::singleton(a.min(b));
        let rhs = VarSet::singleton(a.max(b));
        let lo = Statement::normalized(lhs, rhs, VarSet::EMPTY);
        self.statements
            .range(lo..)
            .take_while(|s| s.lhs() == lhs && s.rhs() == rhs)
            .map(Statement::cond)
            .next()
    }

    /// The separator `has_separator` would return, for every separated pair,
    /// in a single pass over the model. Keys are ordered `(low, high)`.
    pub fn first_separators(&self) -> BTreeMap<(VarId, VarId), VarSet> {
        let mut out = BTreeMap::new();
        match &self.origin {
            Origin::Explicit => {
                for s in self.statements.iter().filter(|s| s.is_elementary()) {
                    let key = (s.lhs().min().unwrap(), s.rhs().min().unwrap());
                    out.entry(key).or_insert(s.cond());
                }
            }
            Origin::ClosedBasis { basis } => {
                for s in basis {
                    for a in s.lhs() {
                        for b in s.rhs() {
                            let key = (a.min(b), a.max(b));
                            out.entry(key)
                                .or_insert_with(|| s.cond() | (s.lhs() - VarSet::singleton(a)) | (s.rhs() - VarSet::singleton(b)));
                        }
                    }
                }
            }
        }
        out
    }
}

fn fast_separator(s: &Statement, a: VarId, b: VarId) -> Option<VarSet> {
    let (x, y) = if s.lhs().contains(a) && s.rhs().contains(b) {
        (a, b)
    } else if s.lhs().contains(b) && s.rhs().contains(a) {
        (b, a)
    } else {
        return None;
    };
    Some(s.cond() | s.lhs().without(x) | s.rhs().without(y))
}
