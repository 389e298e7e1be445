use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::nfa::{merge_alphabets, union_names};
use crate::{check_unique, ModelError, StateId, StateSet, SymbolId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedSymbol {
    pub name: String,
    pub arity: usize,
}

impl RankedSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        RankedSymbol { name: name.into(), arity }
    }
}

/// A bottom-up rule `symbol(lhs…) -> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub symbol: SymbolId,
    pub lhs: Vec<StateId>,
    pub rhs: StateId,
}

/// A finite ranked tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub symbol: SymbolId,
    pub children: Vec<Tree>,
}

impl Tree {
    pub fn leaf(symbol: SymbolId) -> Self {
        Tree { symbol, children: Vec::new() }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }
}

/// A nondeterministic bottom-up tree automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeAutomaton {
    states: Vec<String>,
    symbols: Vec<RankedSymbol>,
    rules: Vec<Rule>,
    final_states: StateSet,
    rules_by_symbol: Vec<Vec<usize>>,
    targets: HashMap<(SymbolId, Vec<StateId>), Vec<StateId>>,
}

impl TreeAutomaton {
    /// Builds a tree automaton; duplicate rules are merged.
    pub fn new(
        states: Vec<String>,
        symbols: Vec<RankedSymbol>,
        rules: impl IntoIterator<Item = Rule>,
        final_states: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, ModelError> {
        check_unique(&states, ModelError::DuplicateState)?;
        let names: Vec<String> = symbols.iter().map(|s| s.name.clone()).collect();
        check_unique(&names, ModelError::DuplicateSymbol)?;
        let n = states.len();
        let mut rules: Vec<Rule> = rules.into_iter().collect();
        for rule in &rules {
            let sym = symbols.get(rule.symbol).ok_or(ModelError::SymbolOutOfRange(rule.symbol))?;
            if sym.arity != rule.lhs.len() {
                return Err(ModelError::ArityMismatch {
                    symbol: sym.name.clone(),
                    expected: sym.arity,
                    found: rule.lhs.len(),
                });
            }
            if let Some(&bad) = rule.lhs.iter().chain([&rule.rhs]).find(|&&q| q >= n) {
                return Err(ModelError::StateOutOfRange(bad));
            }
        }
        rules.sort_unstable();
        rules.dedup();
        let mut finals = FixedBitSet::with_capacity(n);
        for q in final_states {
            if q >= n {
                return Err(ModelError::StateOutOfRange(q));
            }
            finals.insert(q);
        }
        let mut rules_by_symbol = vec![Vec::new(); symbols.len()];
        let mut targets: HashMap<(SymbolId, Vec<StateId>), Vec<StateId>> = HashMap::new();
        for (i, rule) in rules.iter().enumerate() {
            rules_by_symbol[rule.symbol].push(i);
            targets.entry((rule.symbol, rule.lhs.clone())).or_default().push(rule.rhs);
        }
        Ok(TreeAutomaton { states, symbols, rules, final_states: finals, rules_by_symbol, targets })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn symbols(&self) -> &[RankedSymbol] {
        &self.symbols
    }

    pub fn arity(&self, a: SymbolId) -> usize {
        self.symbols[a].arity
    }

    pub fn symbol_index(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s.name == name)
    }

    /// Sorted, duplicate-free rules.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rules_for(&self, a: SymbolId) -> impl Iterator<Item = &Rule> {
        self.rules_by_symbol[a].iter().map(|&i| &self.rules[i])
    }

    /// Right-hand sides of the rules `a(lhs) -> q`, ascending.
    pub fn targets(&self, a: SymbolId, lhs: &[StateId]) -> &[StateId] {
        self.targets.get(&(a, lhs.to_vec())).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn final_states(&self) -> &StateSet {
        &self.final_states
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.final_states.contains(q)
    }

    pub fn leaf_symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.symbols.len()).filter(|&a| self.symbols[a].arity == 0)
    }

    pub fn empty_set(&self) -> StateSet {
        FixedBitSet::with_capacity(self.num_states())
    }

    /// States reachable at the root of `tree` by some run.
    pub fn run(&self, tree: &Tree) -> StateSet {
        let child_sets: Vec<StateSet> = tree.children.iter().map(|c| self.run(c)).collect();
        let mut out = self.empty_set();
        for rule in self.rules_for(tree.symbol) {
            if rule.lhs.iter().zip(&child_sets).all(|(&q, s)| s.contains(q)) {
                out.insert(rule.rhs);
            }
        }
        out
    }

    pub fn accepts(&self, tree: &Tree) -> bool {
        !self.run(tree).is_disjoint(&self.final_states)
    }
}

/// The disjoint union of two tree automata. States of `b` are shifted by
/// `|Q_A|`; symbols are merged by name and must agree on arity.
pub fn union_ta(a: &TreeAutomaton, b: &TreeAutomaton) -> Result<TreeAutomaton, ModelError> {
    let an: Vec<String> = a.symbols.iter().map(|s| s.name.clone()).collect();
    let bn: Vec<String> = b.symbols.iter().map(|s| s.name.clone()).collect();
    let (merged, bmap) = merge_alphabets(&an, &bn);
    let mut symbols = a.symbols.clone();
    for (j, sym) in b.symbols.iter().enumerate() {
        let i = bmap[j];
        if i < symbols.len() {
            if symbols[i].arity != sym.arity {
                return Err(ModelError::ArityConflict {
                    symbol: sym.name.clone(),
                    first: symbols[i].arity,
                    second: sym.arity,
                });
            }
        } else {
            symbols.push(sym.clone());
        }
    }
    debug_assert_eq!(symbols.len(), merged.len());
    let off = a.num_states();
    let rules = a.rules.iter().cloned().chain(b.rules.iter().map(|r| Rule {
        symbol: bmap[r.symbol],
        lhs: r.lhs.iter().map(|q| q + off).collect(),
        rhs: r.rhs + off,
    }));
    let finals = a.final_states.ones().chain(b.final_states.ones().map(|q| q + off));
    TreeAutomaton::new(union_names(&a.states, &b.states), symbols, rules, finals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TreeAutomaton {
        TreeAutomaton::new(
            vec!["q0".into(), "q1".into()],
            vec![RankedSymbol::new("a", 0), RankedSymbol::new("f", 2)],
            [Rule { symbol: 0, lhs: vec![], rhs: 0 }, Rule { symbol: 1, lhs: vec![0, 0], rhs: 1 }],
            [1],
        )
        .unwrap()
    }

    #[test]
    fn runs_bottom_up() {
        let ta = sample();
        let a = Tree::leaf(0);
        let fa = Tree { symbol: 1, children: vec![a.clone(), a.clone()] };
        assert!(!ta.accepts(&a));
        assert!(ta.accepts(&fa));
        assert_eq!(ta.targets(1, &[0, 0]), &[1]);
        assert!(ta.targets(1, &[1, 0]).is_empty());
    }

    #[test]
    fn arity_is_checked() {
        let err = TreeAutomaton::new(
            vec!["q".into()],
            vec![RankedSymbol::new("f", 2)],
            [Rule { symbol: 0, lhs: vec![0], rhs: 0 }],
            [],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::ArityMismatch { expected: 2, found: 1, .. }));
    }

    #[test]
    fn union_detects_arity_conflict() {
        let a = sample();
        let b = TreeAutomaton::new(vec!["r".into()], vec![RankedSymbol::new("f", 1)], [], []).unwrap();
        assert!(matches!(union_ta(&a, &b), Err(ModelError::ArityConflict { .. })));
        let u = union_ta(&a, &a).unwrap();
        assert_eq!(u.num_states(), 4);
        assert_eq!(u.rules().len(), 4);
    }
}
