use fixedbitset::FixedBitSet;

use crate::{check_unique, ModelError, StateId, StateSet, SymbolId};

/// An alternating Büchi automaton.
///
/// `delta(p, a)` is a set of alternatives, each a conjunctive set of
/// successor states. An empty alternative list means `p` has no
/// `a`-transition; an empty conjunct (`p →a ∅`) means "true" and is removed
/// by [`normalize_aba`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aba {
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: StateId,
    accepting: StateSet,
    delta: Vec<Vec<Vec<Vec<StateId>>>>,
}

impl Aba {
    /// Builds an ABA from `(source, symbol, conjunct)` triples. Conjuncts are
    /// sorted and deduplicated, as are the alternatives of each entry.
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, Vec<StateId>)>,
    ) -> Result<Self, ModelError> {
        check_unique(&states, ModelError::DuplicateState)?;
        check_unique(&alphabet, ModelError::DuplicateSymbol)?;
        let n = states.len();
        let k = alphabet.len();
        if initial >= n {
            return Err(ModelError::StateOutOfRange(initial));
        }
        let mut acc = FixedBitSet::with_capacity(n);
        for q in accepting {
            if q >= n {
                return Err(ModelError::StateOutOfRange(q));
            }
            acc.insert(q);
        }
        let mut delta = vec![vec![Vec::new(); k]; n];
        for (p, a, mut conj) in transitions {
            if p >= n {
                return Err(ModelError::StateOutOfRange(p));
            }
            if a >= k {
                return Err(ModelError::SymbolOutOfRange(a));
            }
            if let Some(&bad) = conj.iter().find(|&&q| q >= n) {
                return Err(ModelError::StateOutOfRange(bad));
            }
            conj.sort_unstable();
            conj.dedup();
            delta[p][a].push(conj);
        }
        for entry in delta.iter_mut().flatten() {
            entry.sort_unstable();
            entry.dedup();
        }
        Ok(Aba { states, alphabet, initial, accepting: acc, delta })
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

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting.contains(q)
    }

    /// Alternatives of `δ(p, a)`, each sorted ascending.
    pub fn delta(&self, p: StateId, a: SymbolId) -> &[Vec<StateId>] {
        &self.delta[p][a]
    }

    /// All transitions `(p, a, P)` in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, SymbolId, &[StateId])> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter().enumerate().flat_map(move |(a, alts)| alts.iter().map(move |c| (p, a, c.as_slice())))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    pub fn has_empty_conjunct(&self) -> bool {
        self.transitions().any(|(_, _, c)| c.is_empty())
    }
}

/// Replaces every transition `p →a ∅` by `p →a {sink}`, where `sink` is a
/// fresh accepting state looping on every symbol. Automata without empty
/// conjuncts are returned unchanged.
pub fn normalize_aba(aba: &Aba) -> Aba {
    if !aba.has_empty_conjunct() {
        return aba.clone();
    }
    let sink = aba.num_states();
    let mut name = String::from("sink");
    while aba.states.contains(&name) {
        name.push('_');
    }
    let mut states = aba.states.clone();
    states.push(name);
    let transitions: Vec<_> = aba
        .transitions()
        .map(|(p, a, c)| (p, a, if c.is_empty() { vec![sink] } else { c.to_vec() }))
        .chain((0..aba.num_symbols()).map(|a| (sink, a, vec![sink])))
        .collect();
    let accepting = aba.accepting.ones().chain([sink]);
    Aba::new(states, aba.alphabet.clone(), aba.initial, accepting, transitions)
        .expect("normalization keeps the automaton well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn normalized_input_is_unchanged() {
        let aba = Aba::new(names("s", 2), names("a", 1), 0, [1], [(0, 0, vec![1, 0]), (1, 0, vec![1])]).unwrap();
        assert_eq!(aba.delta(0, 0), &[vec![0, 1]]);
        assert_eq!(normalize_aba(&aba), aba);
    }

    #[test]
    fn empty_conjunct_goes_to_sink() {
        let aba = Aba::new(names("s", 1), names("a", 2), 0, [], [(0, 0, vec![]), (0, 1, vec![0])]).unwrap();
        let norm = normalize_aba(&aba);
        assert_eq!(norm.num_states(), 2);
        assert!(!norm.has_empty_conjunct());
        assert!(norm.is_accepting(1));
        assert_eq!(norm.delta(0, 0), &[vec![1]]);
        assert_eq!(norm.delta(1, 0), &[vec![1]]);
        assert_eq!(norm.delta(1, 1), &[vec![1]]);
    }
}
