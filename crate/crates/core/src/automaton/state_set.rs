use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::StateId;

/// A canonical set of states: sorted, without duplicates.
///
/// Two sets are equal iff their sequences are identical, which lets subset
/// automata use them directly as hashable node keys.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct StateSet(Vec<StateId>);

impl StateSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(state: StateId) -> Self {
        Self(vec![state])
    }

    /// Builds a set from an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted_unchecked(states: Vec<StateId>) -> Self {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        Self(states)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, state: StateId) -> bool {
        self.0.binary_search(&state).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = StateId> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[StateId] {
        &self.0
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.iter().all(|&s| other.contains(s))
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.0.iter().any(|&s| other.contains(s))
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        self.iter().chain(other.iter()).collect()
    }

    /// All subsets of exactly two elements, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = StateSet> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(move |(i, &a)| self.0[i + 1..].iter().map(move |&b| StateSet(vec![a, b])))
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        let mut v: Vec<StateId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = StateId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, StateId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// An ordered pair of states, the node type of self-compositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StatePair {
    pub left: StateId,
    pub right: StateId,
}

impl StatePair {
    pub fn new(left: StateId, right: StateId) -> Self {
        Self { left, right }
    }

    pub fn is_diagonal(&self) -> bool {
        self.left == self.right
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.right, self.left)
    }
}

/// The set of ordered state pairs that must never be jointly contained in
/// an estimate at the periodic checkpoints.
///
/// Pairs are stored exactly as given; no symmetric closure is applied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SpecPairs(BTreeSet<(StateId, StateId)>);

impl SpecPairs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: StateId, b: StateId) -> bool {
        self.0.insert((a, b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.0.iter().copied()
    }

    /// Every ordered pair `(a, b)` with `a != b` over `n` states.
    pub fn all_off_diagonal(n: usize) -> Self {
        let mut out = Self::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    out.insert(StateId::new(a), StateId::new(b));
                }
            }
        }
        out
    }

    /// `(q × q) ∩ pairs ≠ ∅`
    pub fn hits(&self, q: &StateSet) -> bool {
        self.first_hit(q).is_some()
    }

    pub fn first_hit(&self, q: &StateSet) -> Option<(StateId, StateId)> {
        self.0
            .iter()
            .copied()
            .find(|&(a, b)| q.contains(a) && q.contains(b))
    }
}

impl FromIterator<(StateId, StateId)> for SpecPairs {
    fn from_iter<I: IntoIterator<Item = (StateId, StateId)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: usize) -> StateId {
        StateId::new(i)
    }

    #[test]
    fn canonical_regardless_of_input_order() {
        let a: StateSet = [s(2), s(0), s(2), s(1)].into_iter().collect();
        let b: StateSet = [s(0), s(1), s(2)].into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn pairs_of_three() {
        let q: StateSet = [s(0), s(1), s(3)].into_iter().collect();
        let got: Vec<StateSet> = q.pairs().collect();
        assert_eq!(got.len(), 3);
        assert_eq!(got[0].as_slice(), &[s(0), s(1)]);
        assert_eq!(got[2].as_slice(), &[s(1), s(3)]);
        assert_eq!(StateSet::singleton(s(4)).pairs().count(), 0);
    }

    #[test]
    fn spec_hits_is_literal() {
        let spec: SpecPairs = [(s(1), s(2))].into_iter().collect();
        let q12: StateSet = [s(1), s(2)].into_iter().collect();
        let q02: StateSet = [s(0), s(2)].into_iter().collect();
        assert!(spec.hits(&q12));
        assert!(!spec.hits(&q02));
        assert!(!SpecPairs::new().hits(&q12));
        // diagonal pairs hit singletons
        let diag: SpecPairs = [(s(3), s(3))].into_iter().collect();
        assert!(diag.hits(&StateSet::singleton(s(3))));
    }

    #[test]
    fn off_diagonal_count() {
        assert_eq!(SpecPairs::all_off_diagonal(4).len(), 12);
        assert!(SpecPairs::all_off_diagonal(1).is_empty());
    }
}
