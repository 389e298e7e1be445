//! Binary relations over the states of one automaton.

use fixedbitset::FixedBitSet;

use crate::StateId;

/// A set of states, stored as a bitset over the automaton's state indices.
pub type StateSet = FixedBitSet;

/// A binary relation over `0..n`, stored as one bitset row per state.
///
/// `contains(p, r)` reads "p is related to r", i.e. `p ⪯ r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateRelation {
    rows: Vec<FixedBitSet>,
}

impl std::fmt::Debug for StateRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl StateRelation {
    pub fn empty(n: usize) -> Self {
        StateRelation { rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut rel = Self::empty(n);
        for p in 0..n {
            rel.rows[p].insert(p);
        }
        rel
    }

    pub fn full(n: usize) -> Self {
        let mut rel = Self::empty(n);
        for row in &mut rel.rows {
            row.insert_range(..);
        }
        rel
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(StateId, StateId) -> bool) -> Self {
        let mut rel = Self::empty(n);
        for p in 0..n {
            for r in 0..n {
                if f(p, r) {
                    rel.rows[p].insert(r);
                }
            }
        }
        rel
    }

    /// Builds a relation from explicit pairs.
    ///
    /// # Panics
    /// Panics if a pair mentions a state `>= n`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Self {
        let mut rel = Self::empty(n);
        for (p, r) in pairs {
            rel.insert(p, r);
        }
        rel
    }

    /// Size of the carrier.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, p: StateId, r: StateId) -> bool {
        self.rows[p].contains(r)
    }

    pub fn insert(&mut self, p: StateId, r: StateId) {
        self.rows[p].insert(r);
    }

    pub fn remove(&mut self, p: StateId, r: StateId) {
        self.rows[p].set(r, false);
    }

    /// All `r` with `p ⪯ r`.
    pub fn row(&self, p: StateId) -> &FixedBitSet {
        &self.rows[p]
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.rows.iter().enumerate().flat_map(|(p, row)| row.ones().map(move |r| (p, r)))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = Self::empty(self.len());
        for (p, r) in self.pairs() {
            inv.rows[r].insert(p);
        }
        inv
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (row, o) in out.rows.iter_mut().zip(&other.rows) {
            row.intersect_with(o);
        }
        out
    }

    /// Relational composition: `(p, r)` is in the result iff `p self m` and `m other r` for some `m`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::empty(self.len());
        for (p, row) in self.rows.iter().enumerate() {
            for m in row.ones() {
                out.rows[p].union_with(&other.rows[m]);
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.len() == other.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|p| self.contains(p, p))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(p, r)| self.contains(r, p))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.is_symmetric()
    }

    /// The symmetric core `⪯ ∩ ⪯⁻¹`.
    pub fn symmetric_core(&self) -> Self {
        self.intersection(&self.inverse())
    }

    /// Equivalence classes of a relation assumed to be an equivalence, ordered
    /// by smallest member; members ascend within each class.
    pub fn classes(&self) -> Vec<Vec<StateId>> {
        let mut class_of = vec![usize::MAX; self.len()];
        let mut classes: Vec<Vec<StateId>> = Vec::new();
        for p in 0..self.len() {
            if class_of[p] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<StateId> = self.rows[p].ones().filter(|&r| class_of[r] == usize::MAX).collect();
            for &r in &members {
                class_of[r] = id;
            }
            classes.push(members);
        }
        classes
    }
}

/// Decides `p ⪯∀∃ r`: every member of `p` has a `rel`-larger member in `r`.
pub fn relation_ae(rel: &StateRelation, p: &StateSet, r: &StateSet) -> bool {
    p.ones().all(|x| !rel.row(x).is_disjoint(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> StateSet {
        let mut s = FixedBitSet::with_capacity(n);
        for &x in xs {
            s.insert(x);
        }
        s
    }

    #[test]
    fn empty_left_side_is_vacuous() {
        let rel = StateRelation::empty(3);
        assert!(relation_ae(&rel, &set(3, &[]), &set(3, &[])));
        assert!(relation_ae(&rel, &set(3, &[]), &set(3, &[1])));
    }

    #[test]
    fn identity_lifting_is_subset() {
        let id = StateRelation::identity(4);
        assert!(relation_ae(&id, &set(4, &[0, 2]), &set(4, &[0, 2, 3])));
        assert!(!relation_ae(&id, &set(4, &[0, 1]), &set(4, &[0, 2, 3])));
    }

    #[test]
    fn compose_and_inverse() {
        let a = StateRelation::from_pairs(3, [(0, 1)]);
        let b = StateRelation::from_pairs(3, [(1, 2)]);
        assert_eq!(a.compose(&b), StateRelation::from_pairs(3, [(0, 2)]));
        assert_eq!(a.inverse(), StateRelation::from_pairs(3, [(1, 0)]));
    }

    #[test]
    fn classes_of_equivalence() {
        let eq = StateRelation::from_pairs(4, [(0, 0), (1, 1), (2, 2), (3, 3), (0, 2), (2, 0)]);
        assert!(eq.is_equivalence());
        assert_eq!(eq.classes(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn preorder_checks() {
        assert!(StateRelation::full(3).is_preorder());
        assert!(!StateRelation::from_pairs(2, [(0, 1)]).is_preorder());
        let chain = StateRelation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert!(!chain.is_transitive());
    }
}
