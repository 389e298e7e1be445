use std::collections::{BTreeSet, HashMap};

use antisim_core::{union_ta, RankedSymbol, StateSet, SymbolId, Tree, TreeAutomaton};
use fixedbitset::FixedBitSet;

use crate::OracleError;

/// A complete deterministic bottom-up tree automaton obtained by subset
/// construction. State `i` stands for the macro-state `macrostates[i]`.
#[derive(Debug, Clone)]
pub struct DetTa {
    pub macrostates: Vec<StateSet>,
    pub transitions: HashMap<(SymbolId, Vec<usize>), usize>,
}

fn post(ta: &TreeAutomaton, a: SymbolId, args: &[&StateSet]) -> StateSet {
    let mut out = FixedBitSet::with_capacity(ta.num_states());
    for rule in ta.rules().iter().filter(|r| r.symbol == a) {
        if rule.lhs.iter().zip(args).all(|(&q, s)| s.contains(q)) {
            out.insert(rule.rhs);
        }
    }
    out
}

/// Explores reachable macro-states. Returns `Ok(true)` if `stop` fired on one.
fn explore(
    ta: &TreeAutomaton,
    cap: usize,
    det: &mut DetTa,
    mut stop: impl FnMut(&StateSet) -> bool,
) -> Result<bool, OracleError> {
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut pending = Vec::new();
    let mut intern = |set: StateSet, det: &mut DetTa, pending: &mut Vec<usize>| -> Result<(usize, bool), OracleError> {
        if let Some(&i) = index.get(&set) {
            return Ok((i, false));
        }
        if det.macrostates.len() >= cap {
            return Err(OracleError::CapExceeded(cap));
        }
        let i = det.macrostates.len();
        let fired = stop(&set);
        index.insert(set.clone(), i);
        det.macrostates.push(set);
        pending.push(i);
        Ok((i, fired))
    };
    for a in 0..ta.symbols().len() {
        if ta.arity(a) == 0 {
            let (i, fired) = intern(post(ta, a, &[]), det, &mut pending)?;
            det.transitions.insert((a, Vec::new()), i);
            if fired {
                return Ok(true);
            }
        }
    }
    let mut processed: Vec<usize> = Vec::new();
    let mut cursor = 0;
    while cursor < pending.len() {
        let pivot = pending[cursor];
        cursor += 1;
        processed.push(pivot);
        for a in 0..ta.symbols().len() {
            let r = ta.arity(a);
            if r == 0 {
                continue;
            }
            let m = processed.len();
            let mut digits = vec![0usize; r];
            loop {
                let tuple: Vec<usize> = digits.iter().map(|&d| processed[d]).collect();
                if tuple.contains(&pivot) {
                    let args: Vec<&StateSet> = tuple.iter().map(|&i| &det.macrostates[i]).collect();
                    let target = post(ta, a, &args);
                    let (i, fired) = intern(target, det, &mut pending)?;
                    det.transitions.insert((a, tuple), i);
                    if fired {
                        return Ok(true);
                    }
                }
                if !advance(&mut digits, m) {
                    break;
                }
            }
        }
    }
    Ok(false)
}

/// Odometer increment over `0..m` per digit; false once it wraps around.
fn advance(digits: &mut [usize], m: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < m {
            return true;
        }
        *d = 0;
    }
    false
}

/// Bottom-up subset construction over all reachable macro-states.
pub fn ta_determinize(ta: &TreeAutomaton, cap: usize) -> Result<DetTa, OracleError> {
    let mut det = DetTa { macrostates: Vec::new(), transitions: HashMap::new() };
    explore(ta, cap, &mut det, |_| false)?;
    Ok(det)
}

/// Universality: every reachable macro-state must contain a final state.
pub fn ta_universal_classical(ta: &TreeAutomaton, cap: usize) -> Result<bool, OracleError> {
    let mut det = DetTa { macrostates: Vec::new(), transitions: HashMap::new() };
    let finals = ta.final_states();
    Ok(!explore(ta, cap, &mut det, |s| s.is_disjoint(finals))?)
}

/// Inclusion by determinizing the disjoint union: `L(a) ⊄ L(b)` iff some
/// reachable macro-state holds a final state of `a` and none of `b`.
pub fn ta_inclusion_classical(a: &TreeAutomaton, b: &TreeAutomaton, cap: usize) -> Result<bool, OracleError> {
    let u = union_ta(a, b).map_err(|e| OracleError::ArityConflict(e.to_string()))?;
    let split = a.num_states();
    let n = u.num_states();
    let mut fa = FixedBitSet::with_capacity(n);
    let mut fb = FixedBitSet::with_capacity(n);
    for q in u.final_states().ones() {
        if q < split {
            fa.insert(q);
        } else {
            fb.insert(q);
        }
    }
    let mut det = DetTa { macrostates: Vec::new(), transitions: HashMap::new() };
    Ok(!explore(&u, cap, &mut det, |s| !s.is_disjoint(&fa) && s.is_disjoint(&fb))?)
}

/// Every tree over `symbols` with at most `max_nodes` nodes, by size.
pub fn all_trees(symbols: &[RankedSymbol], max_nodes: usize) -> Result<Vec<Tree>, OracleError> {
    if max_nodes > 8 {
        return Err(OracleError::BoundExceeded(format!("{max_nodes} nodes (at most 8)")));
    }
    let mut by_size: Vec<Vec<Tree>> = vec![Vec::new(); max_nodes + 1];
    for size in 1..=max_nodes {
        let mut layer = Vec::new();
        for (a, sym) in symbols.iter().enumerate() {
            for children in forests(&by_size, sym.arity, size - 1) {
                layer.push(Tree { symbol: a, children });
            }
        }
        by_size[size] = layer;
    }
    Ok(by_size.into_iter().flatten().collect())
}

/// Sequences of `count` trees with `nodes` nodes in total.
fn forests(by_size: &[Vec<Tree>], count: usize, nodes: usize) -> Vec<Vec<Tree>> {
    if count == 0 {
        return if nodes == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=nodes.saturating_sub(count - 1) {
        if first >= by_size.len() {
            break;
        }
        for rest in forests(by_size, count - 1, nodes - first) {
            for t in &by_size[first] {
                let mut f = Vec::with_capacity(count);
                f.push(t.clone());
                f.extend(rest.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}

/// The accepted trees with at most `max_nodes` nodes, decided by an
/// explicit top-down search for a run.
pub fn tree_language_bounded(ta: &TreeAutomaton, max_nodes: usize) -> Result<BTreeSet<Tree>, OracleError> {
    Ok(all_trees(ta.symbols(), max_nodes)?
        .into_iter()
        .filter(|t| ta.final_states().ones().any(|q| has_run(ta, t, q)))
        .collect())
}

fn has_run(ta: &TreeAutomaton, t: &Tree, q: usize) -> bool {
    ta.rules()
        .iter()
        .any(|r| r.symbol == t.symbol && r.rhs == q && r.lhs.iter().zip(&t.children).all(|(&p, c)| has_run(ta, c, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;
    use antisim_core::Rule;

    fn syms() -> Vec<RankedSymbol> {
        vec![RankedSymbol::new("a", 0), RankedSymbol::new("f", 2)]
    }

    fn total(final_q: bool) -> TreeAutomaton {
        TreeAutomaton::new(
            vec!["q".into()],
            syms(),
            [Rule { symbol: 0, lhs: vec![], rhs: 0 }, Rule { symbol: 1, lhs: vec![0, 0], rhs: 0 }],
            if final_q { vec![0] } else { vec![] },
        )
        .unwrap()
    }

    #[test]
    fn single_state_total_is_universal() {
        assert_eq!(ta_universal_classical(&total(true), DEFAULT_CAP), Ok(true));
        assert_eq!(ta_universal_classical(&total(false), DEFAULT_CAP), Ok(false));
    }

    #[test]
    fn inclusion_basics() {
        assert_eq!(ta_inclusion_classical(&total(false), &total(true), DEFAULT_CAP), Ok(true));
        assert_eq!(ta_inclusion_classical(&total(true), &total(false), DEFAULT_CAP), Ok(false));
    }

    #[test]
    fn tree_counts() {
        // sizes 1, 3, 5: 1 + 1 + 2 binary trees over one leaf.
        let trees = all_trees(&syms(), 5).unwrap();
        assert_eq!(trees.len(), 4);
        assert!(all_trees(&syms(), 9).is_err());
    }

    #[test]
    fn determinization_is_complete() {
        let det = ta_determinize(&total(true), DEFAULT_CAP).unwrap();
        assert_eq!(det.macrostates.len(), 1);
        assert_eq!(det.transitions.len(), 2);
        let empty = TreeAutomaton::new(vec!["q".into()], syms(), [], []).unwrap();
        assert_eq!(tree_language_bounded(&empty, 5).unwrap().len(), 0);
    }
}
