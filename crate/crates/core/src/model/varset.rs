use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use super::ModelError;

/// Largest universe representable by a [`VarSet`].
pub const MAX_VARS: usize = 64;

/// Dense index of a variable in its universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(u8);

impl VarId {
    /// # Panics
    ///
    /// Panics if `index >= MAX_VARS`.
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_VARS, "variable index {index} out of range");
        VarId(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<VarId> for usize {
    fn from(v: VarId) -> usize {
        v.index()
    }
}

/// A set of variables encoded as a 64-bit vector.
///
/// The derived ordering compares the raw bit patterns. It is total and
/// deterministic, which is all the statement store needs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        if n == MAX_VARS {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: VarId) -> Self {
        VarSet(1u64 << v.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: VarId) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    pub fn insert(&mut self, v: VarId) {
        self.0 |= 1u64 << v.0;
    }

    pub fn remove(&mut self, v: VarId) {
        self.0 &= !(1u64 << v.0);
    }

    pub fn with(self, v: VarId) -> Self {
        VarSet(self.0 | 1u64 << v.0)
    }

    pub fn without(self, v: VarId) -> Self {
        VarSet(self.0 & !(1u64 << v.0))
    }

    pub fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<VarId> {
        if self.0 == 0 {
            None
        } else {
            Some(VarId(self.0.trailing_zeros() as u8))
        }
    }

    /// Largest member, if any.
    pub fn max(self) -> Option<VarId> {
        if self.0 == 0 {
            None
        } else {
            Some(VarId(63 - self.0.leading_zeros() as u8))
        }
    }

    /// Members in increasing index order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(self.0),
        }
    }

    /// Subsets that are neither empty nor equal to `self`.
    pub fn proper_nonempty_subsets(self) -> impl Iterator<Item = VarSet> {
        self.subsets().filter(move |s| !s.is_empty() && *s != self)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

impl BitOr for VarSet {
    type Output = VarSet;
    fn bitor(self, rhs: VarSet) -> VarSet {
        VarSet(self.0 | rhs.0)
    }
}

impl BitAnd for VarSet {
    type Output = VarSet;
    fn bitand(self, rhs: VarSet) -> VarSet {
        VarSet(self.0 & rhs.0)
    }
}

impl Sub for VarSet {
    type Output = VarSet;
    fn sub(self, rhs: VarSet) -> VarSet {
        VarSet(self.0 & !rhs.0)
    }
}

impl Not for VarSet {
    type Output = VarSet;
    fn not(self) -> VarSet {
        VarSet(!self.0)
    }
}

impl FromIterator<VarId> for VarSet {
    fn from_iter<I: IntoIterator<Item = VarId>>(iter: I) -> Self {
        iter.into_iter().fold(VarSet::EMPTY, VarSet::with)
    }
}

impl IntoIterator for VarSet {
    type Item = VarId;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = VarId;

    fn next(&mut self) -> Option<VarId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(VarId(v as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Descending enumeration of the subsets of a mask.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.mask)
        };
        Some(VarSet(cur))
    }
}

/// Declared variable names, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, VarId>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Universe {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(ModelError::InvalidName(name));
            }
            if out.index.contains_key(&name) {
                return Err(ModelError::DuplicateName(name));
            }
            if out.names.len() == MAX_VARS {
                return Err(ModelError::TooManyVariables {
                    count: out.names.len() + 1,
                });
            }
            out.index.insert(name.clone(), VarId::new(out.names.len()));
            out.names.push(name);
        }
        Ok(out)
    }

    /// `a, b, c, ...` for up to 26 variables, `v0, v1, ...` beyond that.
    pub fn alphabetic(n: usize) -> Self {
        let names: Vec<String> = if n <= 26 {
            (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..n).map(|i| format!("v{i}")).collect()
        };
        Universe::new(names).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn all(&self) -> VarSet {
        VarSet::full(self.len())
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.len()).map(VarId::new)
    }

    /// Space-separated member names, in index order.
    pub fn format_set(&self, set: VarSet) -> String {
        set.iter()
            .map(|v| self.name(v))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
