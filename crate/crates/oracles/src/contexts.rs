use std::collections::{BTreeSet, HashMap};

use antisim_core::{StateId, StateSet, SymbolId, TreeAutomaton};
use fixedbitset::FixedBitSet;

use crate::OracleError;

/// A tree whose leaves may be holes. Holes are numbered left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Context {
    Hole,
    Node(SymbolId, Vec<Context>),
}

impl Context {
    pub fn holes(&self) -> usize {
        match self {
            Context::Hole => 1,
            Context::Node(_, kids) => kids.iter().map(Context::holes).sum(),
        }
    }
}

type Memo = HashMap<(usize, usize), Vec<Context>>;

/// Contexts with exactly `nodes` symbol nodes and `holes` holes.
fn shapes(ta: &TreeAutomaton, nodes: usize, holes: usize, memo: &mut Memo) -> Vec<Context> {
    if let Some(v) = memo.get(&(nodes, holes)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if nodes == 0 {
        if holes == 1 {
            out.push(Context::Hole);
        }
    } else {
        for a in 0..ta.symbols().len() {
            for kids in sequences(ta, ta.arity(a), nodes - 1, holes, memo) {
                out.push(Context::Node(a, kids));
            }
        }
    }
    memo.insert((nodes, holes), out.clone());
    out
}

fn sequences(ta: &TreeAutomaton, count: usize, nodes: usize, holes: usize, memo: &mut Memo) -> Vec<Vec<Context>> {
    if count == 0 {
        return if nodes == 0 && holes == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for n1 in 0..=nodes {
        for h1 in 0..=holes {
            let firsts = shapes(ta, n1, h1, memo);
            if firsts.is_empty() {
                continue;
            }
            for rest in sequences(ta, count - 1, nodes - n1, holes - h1, memo) {
                for f in &firsts {
                    let mut seq = vec![f.clone()];
                    seq.extend(rest.iter().cloned());
                    out.push(seq);
                }
            }
        }
    }
    out
}

fn eval(ta: &TreeAutomaton, ctx: &Context, states: &[StateId], next_hole: &mut usize) -> StateSet {
    let mut out = FixedBitSet::with_capacity(ta.num_states());
    match ctx {
        Context::Hole => {
            out.insert(states[*next_hole]);
            *next_hole += 1;
        }
        Context::Node(a, kids) => {
            let sets: Vec<StateSet> = kids.iter().map(|k| eval(ta, k, states, next_hole)).collect();
            for rule in ta.rules().iter().filter(|r| r.symbol == *a) {
                if rule.lhs.iter().zip(&sets).all(|(&q, s)| s.contains(q)) {
                    out.insert(rule.rhs);
                }
            }
        }
    }
    out
}

/// Whether `ctx` is accepted when its holes are labelled by `states`.
pub fn context_accepted(ta: &TreeAutomaton, ctx: &Context, states: &[StateId]) -> bool {
    let mut hole = 0;
    !eval(ta, ctx, states, &mut hole).is_disjoint(ta.final_states())
}

/// All contexts with `states.len()` holes and at most `max_nodes` symbol
/// nodes that are accepted from the tuple `states`.
pub fn enumerate_contexts(
    ta: &TreeAutomaton,
    states: &[StateId],
    max_nodes: usize,
) -> Result<BTreeSet<Context>, OracleError> {
    if max_nodes > 6 {
        return Err(OracleError::BoundExceeded(format!("{max_nodes} context nodes (at most 6)")));
    }
    let mut memo = Memo::new();
    let mut out = BTreeSet::new();
    for nodes in 0..=max_nodes {
        for ctx in shapes(ta, nodes, states.len(), &mut memo) {
            if context_accepted(ta, &ctx, states) {
                out.insert(ctx);
            }
        }
    }
    Ok(out)
}
