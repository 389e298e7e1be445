use crate::{check_unique, ModelError, StateId, SymbolId};

/// A labelled transition system: states, symbols and labelled edges, nothing else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    states: Vec<String>,
    alphabet: Vec<String>,
    transitions: Vec<(StateId, SymbolId, StateId)>,
    /// `pre[a][q]` lists the `a`-predecessors of `q`.
    pre: Vec<Vec<Vec<StateId>>>,
    succ: Vec<Vec<Vec<StateId>>>,
}

impl Lts {
    /// Builds an LTS; duplicate transitions are merged.
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, StateId)>,
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
        let mut pre = vec![vec![Vec::new(); n]; k];
        let mut succ = vec![vec![Vec::new(); n]; k];
        for &(p, a, q) in &transitions {
            pre[a][q].push(p);
            succ[a][p].push(q);
        }
        Ok(Lts { states, alphabet, transitions, pre, succ })
    }

    /// An LTS with anonymous states `0..n` and symbols `0..k`.
    pub fn anonymous(
        n: usize,
        k: usize,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, StateId)>,
    ) -> Result<Self, ModelError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), (0..k).map(|i| format!("a{i}")).collect(), transitions)
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

    /// Sorted, duplicate-free transitions.
    pub fn transitions(&self) -> &[(StateId, SymbolId, StateId)] {
        &self.transitions
    }

    pub fn pre(&self, a: SymbolId, q: StateId) -> &[StateId] {
        &self.pre[a][q]
    }

    pub fn succ(&self, q: StateId, a: SymbolId) -> &[StateId] {
        &self.succ[a][q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_merged() {
        let lts = Lts::anonymous(2, 1, [(0, 0, 1), (0, 0, 1), (1, 0, 0)]).unwrap();
        assert_eq!(lts.transitions().len(), 2);
        assert_eq!(lts.pre(0, 1), &[0]);
        assert_eq!(lts.succ(1, 0), &[0]);
    }

    #[test]
    fn rejects_dangling_edges() {
        assert_eq!(Lts::anonymous(2, 1, [(0, 0, 2)]), Err(ModelError::StateOutOfRange(2)));
        assert_eq!(Lts::anonymous(2, 1, [(0, 1, 1)]), Err(ModelError::SymbolOutOfRange(1)));
    }
}
