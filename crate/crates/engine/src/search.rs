//! Shared machinery for the antichain searches: engines, statistics and the
//! frontier arena holding `Processed ∪ Next`.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use antisim_core::{relation_ae, StateId, StateRelation, StateSet, SymbolId};

/// Which variant of the search to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    /// Plain subset construction with equality-based deduplication.
    Classical,
    /// Antichains over the subset order.
    Antichain,
    /// Antichains over a simulation preorder, with Minimize.
    AntichainSim,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Classical, Engine::Antichain, Engine::AntichainSim];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Classical => "classical",
            Engine::Antichain => "antichain",
            Engine::AntichainSim => "antichain-sim",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine `{s}` (expected classical, antichain or antichain-sim)"))
    }
}

/// Optimisations of the simulation-based engine. Ignored by the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    /// Minimize every macro-state before storing it.
    pub minimize: bool,
    /// Prune product-states `(p, P)` with `p ⪯ p'` for some `p' ∈ P`.
    pub opt1b: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { minimize: true, opt1b: true }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Initial elements plus every Post result, counted before filtering.
    pub generated: usize,
    /// Largest number of stored elements at any time.
    pub stored_peak: usize,
}

/// Outcome of a universality or inclusion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub stats: SearchStats,
    /// For word automata: a word outside the language (universality) or in
    /// `L(A) \ L(B)` (inclusion). Always `None` for tree automata.
    pub witness: Option<Vec<SymbolId>>,
}

/// The preorder used for subsumption.
#[derive(Clone, Copy)]
pub(crate) enum Order<'a> {
    Identity,
    Sim(&'a StateRelation),
}

impl Order<'_> {
    pub(crate) fn leq(&self, p: StateId, r: StateId) -> bool {
        match self {
            Order::Identity => p == r,
            Order::Sim(rel) => rel.contains(p, r),
        }
    }

    /// `p ⪯∀∃ r`.
    pub(crate) fn ae(&self, p: &StateSet, r: &StateSet) -> bool {
        match self {
            Order::Identity => p.is_subset(r),
            Order::Sim(rel) => relation_ae(rel, p, r),
        }
    }
}

/// Drops every state that is strictly dominated by another member, and every
/// state equivalent to a member with a smaller index.
pub fn minimize_macrostate(m: &StateSet, rel: &StateRelation) -> StateSet {
    let mut out = m.clone();
    for r in m.ones() {
        let dominated = m.ones().any(|s| s != r && rel.contains(r, s) && (!rel.contains(s, r) || s < r));
        if dominated {
            out.set(r, false);
        }
    }
    out
}

struct Node<T> {
    item: T,
    parent: Option<usize>,
    symbol: Option<SymbolId>,
    alive: bool,
}

/// Arena of every element ever stored. Dead (purged) nodes keep their parent
/// links so that witnesses can still be traced through them.
pub(crate) struct Frontier<T> {
    nodes: Vec<Node<T>>,
    next: VecDeque<usize>,
    processed: Vec<usize>,
    alive: usize,
    pub(crate) stats: SearchStats,
    admitted: Option<HashSet<T>>,
}

impl<T: Clone + Eq + Hash> Frontier<T> {
    pub(crate) fn new() -> Self {
        Frontier {
            nodes: Vec::new(),
            next: VecDeque::new(),
            processed: Vec::new(),
            alive: 0,
            stats: SearchStats::default(),
            admitted: cfg!(debug_assertions).then(HashSet::new),
        }
    }

    pub(crate) fn count_generated(&mut self) {
        self.stats.generated += 1;
    }

    pub(crate) fn any_alive(&self, mut pred: impl FnMut(&T) -> bool) -> bool {
        self.nodes.iter().any(|n| n.alive && pred(&n.item))
    }

    pub(crate) fn purge(&mut self, mut pred: impl FnMut(&T) -> bool) {
        for node in &mut self.nodes {
            if node.alive && pred(&node.item) {
                node.alive = false;
                self.alive -= 1;
            }
        }
    }

    pub(crate) fn push(&mut self, item: T, parent: Option<usize>, symbol: Option<SymbolId>) -> usize {
        if let Some(seen) = self.admitted.as_mut() {
            assert!(seen.insert(item.clone()), "an element was admitted to the frontier twice");
        }
        let id = self.nodes.len();
        self.nodes.push(Node { item, parent, symbol, alive: true });
        self.next.push_back(id);
        self.alive += 1;
        self.stats.stored_peak = self.stats.stored_peak.max(self.alive);
        id
    }

    /// Pops the oldest live element of `Next`; it stays stored as processed.
    pub(crate) fn pop(&mut self) -> Option<usize> {
        while let Some(id) = self.next.pop_front() {
            if self.nodes[id].alive {
                self.processed.push(id);
                return Some(id);
            }
        }
        None
    }

    pub(crate) fn item(&self, id: usize) -> &T {
        &self.nodes[id].item
    }

    /// Live processed elements in processing order.
    pub(crate) fn processed(&self) -> Vec<usize> {
        self.processed.iter().copied().filter(|&i| self.nodes[i].alive).collect()
    }

    /// The symbols along the parent chain ending in `id`.
    pub(crate) fn word(&self, mut id: usize) -> Vec<SymbolId> {
        let mut word = Vec::new();
        loop {
            let node = &self.nodes[id];
            if let Some(a) = node.symbol {
                word.push(a);
            }
            match node.parent {
                Some(p) => id = p,
                None => break,
            }
        }
        word.reverse();
        word
    }
}
