use fixedbitset::FixedBitSet;

use crate::{check_unique, Lts, ModelError, StateId, StateSet, SymbolId};

/// A nondeterministic finite word automaton.
///
/// The same structure doubles as a Büchi automaton in the oracles, where
/// `final_states` is read as the Büchi acceptance set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    states: Vec<String>,
    alphabet: Vec<String>,
    transitions: Vec<(StateId, SymbolId, StateId)>,
    initial: StateSet,
    final_states: StateSet,
    succ: Vec<Vec<Vec<StateId>>>,
}

impl Nfa {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, StateId)>,
        initial: impl IntoIterator<Item = StateId>,
        final_states: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, ModelError> {
        check_unique(&states, ModelError::DuplicateState)?;
        check_unique(&alphabet, ModelError::DuplicateSymbol)?;
        let n = states.len();
        let k = alphabet.len();
        let mut transitions: Vec<_> = transitions.into_iter().collect();
        for &(p, a, q) in &transitions {
            if p >= n || q >= n {
                return Err(ModelError::StateOutOfRange(p.max(q)));
            }
            if a >= k {
                return Err(ModelError::SymbolOutOfRange(a));
            }
        }
        transitions.sort_unstable();
        transitions.dedup();
        let initial = to_set(n, initial)?;
        let final_states = to_set(n, final_states)?;
        let mut succ = vec![vec![Vec::new(); k]; n];
        for &(p, a, q) in &transitions {
            succ[p][a].push(q);
        }
        Ok(Nfa { states, alphabet, transitions, initial, final_states, succ })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<SymbolId> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn transitions(&self) -> &[(StateId, SymbolId, StateId)] {
        &self.transitions
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn final_states(&self) -> &StateSet {
        &self.final_states
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.final_states.contains(q)
    }

    /// Successors of `q` under `a`, ascending.
    pub fn succ(&self, q: StateId, a: SymbolId) -> &[StateId] {
        &self.succ[q][a]
    }

    pub fn empty_set(&self) -> StateSet {
        FixedBitSet::with_capacity(self.num_states())
    }

    /// `Post_a(set)`: all `a`-successors of members of `set`.
    pub fn post(&self, set: &StateSet, a: SymbolId) -> StateSet {
        let mut out = self.empty_set();
        for q in set.ones() {
            for &r in &self.succ[q][a] {
                out.insert(r);
            }
        }
        out
    }

    /// Whether the finite word is accepted.
    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        let mut cur = self.initial.clone();
        for &a in word {
            cur = self.post(&cur, a);
        }
        !cur.is_disjoint(&self.final_states)
    }

    /// The underlying LTS, forgetting initial and final states.
    pub fn to_lts(&self) -> Lts {
        Lts::new(self.states.clone(), self.alphabet.clone(), self.transitions.iter().copied())
            .expect("an Nfa is a well-formed LTS")
    }
}

fn to_set(n: usize, items: impl IntoIterator<Item = StateId>) -> Result<StateSet, ModelError> {
    let mut set = FixedBitSet::with_capacity(n);
    for q in items {
        if q >= n {
            return Err(ModelError::StateOutOfRange(q));
        }
        set.insert(q);
    }
    Ok(set)
}

/// Names for a disjoint union: unchanged when the two name sets are
/// disjoint, otherwise every name gets a `@A` / `@B` suffix.
pub(crate) fn union_names(a: &[String], b: &[String]) -> Vec<String> {
    let left: std::collections::HashSet<&str> = a.iter().map(String::as_str).collect();
    if b.iter().any(|s| left.contains(s.as_str())) {
        a.iter().map(|s| format!("{s}@A")).chain(b.iter().map(|s| format!("{s}@B"))).collect()
    } else {
        a.iter().chain(b).cloned().collect()
    }
}

/// Merges two alphabets by name, `a`'s order first. Returns the merged list
/// and the index map for `b`'s symbols.
pub(crate) fn merge_alphabets(a: &[String], b: &[String]) -> (Vec<String>, Vec<SymbolId>) {
    let mut merged = a.to_vec();
    let map = b
        .iter()
        .map(|s| match merged.iter().position(|t| t == s) {
            Some(i) => i,
            None => {
                merged.push(s.clone());
                merged.len() - 1
            }
        })
        .collect();
    (merged, map)
}

/// The disjoint union `A ∪ B`. States of `a` keep indices `0..|Q_A|`; states
/// of `b` are shifted by `|Q_A|`. Alphabets are merged by symbol name.
pub fn union_nfa(a: &Nfa, b: &Nfa) -> Nfa {
    let off = a.num_states();
    let states = union_names(&a.states, &b.states);
    let (alphabet, bmap) = merge_alphabets(&a.alphabet, &b.alphabet);
    let transitions =
        a.transitions.iter().copied().chain(b.transitions.iter().map(|&(p, s, q)| (p + off, bmap[s], q + off)));
    let initial = a.initial.ones().chain(b.initial.ones().map(|q| q + off));
    let finals = a.final_states.ones().chain(b.final_states.ones().map(|q| q + off));
    Nfa::new(states, alphabet, transitions, initial, finals).expect("union of valid automata is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn two_state() -> Nfa {
        Nfa::new(names(&["p", "q"]), names(&["a"]), [(0, 0, 1), (1, 0, 1)], [0], [1]).unwrap()
    }

    #[test]
    fn acceptance_by_subset_simulation() {
        let a = two_state();
        assert!(!a.accepts(&[]));
        assert!(a.accepts(&[0]));
        assert!(a.accepts(&[0, 0, 0]));
    }

    #[test]
    fn self_union_is_tagged() {
        let a = two_state();
        let u = union_nfa(&a, &a);
        assert_eq!(u.num_states(), 4);
        assert_eq!(u.state_names()[2], "p@B");
        assert_eq!(u.initial().ones().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(u.num_symbols(), 1);
    }

    #[test]
    fn rejects_out_of_range_initial() {
        let err = Nfa::new(names(&["p"]), names(&["a"]), [], [1], []).unwrap_err();
        assert_eq!(err, ModelError::StateOutOfRange(1));
    }
}
