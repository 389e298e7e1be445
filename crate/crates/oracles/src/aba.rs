use std::collections::{HashMap, HashSet};

use antisim_core::{Aba, Nfa, SymbolId};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::{align_alphabets, OracleError};

/// The ultimately periodic word `prefix · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    pub prefix: Vec<SymbolId>,
    pub cycle: Vec<SymbolId>,
}

impl LassoWord {
    pub fn new(prefix: Vec<SymbolId>, cycle: Vec<SymbolId>) -> Self {
        assert!(!cycle.is_empty(), "the loop of a lasso must be nonempty");
        LassoWord { prefix, cycle }
    }
}

/// All lassos with `|prefix| ≤ max_prefix` and `1 ≤ |cycle| ≤ max_cycle`.
pub fn all_lassos(k: usize, max_prefix: usize, max_cycle: usize) -> Result<Vec<LassoWord>, OracleError> {
    if max_prefix > 4 || max_cycle > 4 {
        return Err(OracleError::BoundExceeded(format!("lasso bounds {max_prefix}/{max_cycle} (at most 4)")));
    }
    let prefixes = crate::all_words(k, max_prefix);
    let cycles: Vec<_> = crate::all_words(k, max_cycle).into_iter().filter(|w| !w.is_empty()).collect();
    Ok(prefixes.iter().flat_map(|u| cycles.iter().map(move |v| LassoWord::new(u.clone(), v.clone()))).collect())
}

/// Miyano–Hayashi breakpoint construction. The result is an [`Nfa`] whose
/// final states are its Büchi acceptance set. States are pairs `(S, O)`
/// with `O ⊆ S`; a pair is accepting iff `O = ∅`. An empty conjunct is
/// read as "true"; a missing entry as "false".
pub fn aba_to_nba(aba: &Aba, cap: usize) -> Result<Nfa, OracleError> {
    let n = aba.num_states();
    if n > 64 {
        return Err(OracleError::BoundExceeded(format!("{n} states (at most 64)")));
    }
    let acc: u64 = aba.accepting().ones().fold(0, |m, q| m | 1 << q);
    let mask = |c: &[usize]| c.iter().fold(0u64, |m, &q| m | 1 << q);
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut states = vec![(1u64 << aba.initial(), 0u64)];
    index.insert(states[0], 0);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (s, o) = states[i];
        for a in 0..aba.num_symbols() {
            // Partial successors (S', O-part) built one source state at a time.
            let mut partial: HashSet<(u64, u64)> = HashSet::from([(0, 0)]);
            for q in (0..n).filter(|&q| s >> q & 1 == 1) {
                let mut next = HashSet::new();
                for conj in aba.delta(q, a) {
                    let c = mask(conj);
                    let in_o = o >> q & 1 == 1;
                    for &(ps, po) in &partial {
                        next.insert((ps | c, if in_o { po | c } else { po }));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (s2, po) in partial {
                let o2 = if o == 0 { s2 & !acc } else { po & !acc };
                let target = match index.get(&(s2, o2)) {
                    Some(&t) => t,
                    None => {
                        if states.len() >= cap {
                            return Err(OracleError::CapExceeded(cap));
                        }
                        index.insert((s2, o2), states.len());
                        states.push((s2, o2));
                        states.len() - 1
                    }
                };
                edges.push((i, a, target));
            }
        }
        i += 1;
    }
    let names = (0..states.len()).map(|i| format!("m{i}")).collect();
    let finals: Vec<usize> = (0..states.len()).filter(|&i| states[i].1 == 0).collect();
    Ok(Nfa::new(names, aba.alphabet().to_vec(), edges, [0], finals).expect("construction is well formed"))
}

/// Büchi membership of a lasso: search the product of `nba` with the lasso
/// positions for a reachable cycle through an accepting state.
pub fn nba_lasso_member(nba: &Nfa, w: &LassoWord) -> bool {
    let len = w.prefix.len() + w.cycle.len();
    let letter = |i: usize| if i < w.prefix.len() { w.prefix[i] } else { w.cycle[i - w.prefix.len()] };
    let step = |i: usize| if i + 1 < len { i + 1 } else { w.prefix.len() };
    let mut graph: DiGraph<(usize, usize), ()> = DiGraph::new();
    let mut index = HashMap::new();
    let mut stack = Vec::new();
    for q in nba.initial().ones() {
        let node = graph.add_node((q, 0));
        index.insert((q, 0), node);
        stack.push((q, 0));
    }
    while let Some((q, i)) = stack.pop() {
        let from = index[&(q, i)];
        for &r in nba.succ(q, letter(i)) {
            let key = (r, step(i));
            let to = *index.entry(key).or_insert_with(|| {
                stack.push(key);
                graph.add_node(key)
            });
            graph.add_edge(from, to, ());
        }
    }
    tarjan_scc(&graph).into_iter().any(|scc| {
        let cyclic = scc.len() > 1 || graph.contains_edge(scc[0], scc[0]);
        cyclic && scc.iter().any(|&v| nba.is_final(graph[v].0))
    })
}

/// Membership of a lasso in the language of an ABA.
pub fn aba_lasso_member(aba: &Aba, w: &LassoWord, cap: usize) -> Result<bool, OracleError> {
    Ok(nba_lasso_member(&aba_to_nba(aba, cap)?, w))
}

/// The first lasso within the bounds on which the two languages differ.
pub fn aba_lasso_difference(
    a: &Aba,
    b: &Aba,
    max_prefix: usize,
    max_cycle: usize,
    cap: usize,
) -> Result<Option<LassoWord>, OracleError> {
    let map = align_alphabets(a.alphabet(), b.alphabet())?;
    let na = aba_to_nba(a, cap)?;
    let nb = aba_to_nba(b, cap)?;
    for w in all_lassos(a.num_symbols(), max_prefix, max_cycle)? {
        let to_b =
            |v: &[usize]| -> Vec<usize> { v.iter().map(|&x| map.iter().position(|&i| i == x).unwrap()).collect() };
        let wb = LassoWord::new(to_b(&w.prefix), to_b(&w.cycle));
        if nba_lasso_member(&na, &w) != nba_lasso_member(&nb, &wb) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn aba_lasso_language_equal(
    a: &Aba,
    b: &Aba,
    max_prefix: usize,
    max_cycle: usize,
    cap: usize,
) -> Result<bool, OracleError> {
    Ok(aba_lasso_difference(a, b, max_prefix, max_cycle, cap)?.is_none())
}
