use std::collections::{HashSet, VecDeque};

use antisim_core::{Nfa, StateSet};

use crate::{align_alphabets, OracleError};

/// Universality by explicit subset construction: `L(nfa) = Σ*` iff every
/// reachable macro-state contains a final state.
pub fn fa_universal_subset(nfa: &Nfa, cap: usize) -> Result<bool, OracleError> {
    let mut seen: HashSet<StateSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(nfa.initial().clone());
    queue.push_back(nfa.initial().clone());
    while let Some(set) = queue.pop_front() {
        if set.is_disjoint(nfa.final_states()) {
            return Ok(false);
        }
        for a in 0..nfa.num_symbols() {
            let next = nfa.post(&set, a);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(OracleError::CapExceeded(cap));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

/// Inclusion `L(a) ⊆ L(b)` by exploring `a × det(b)`: the inclusion fails
/// iff some reachable pair `(p, S)` has `p` final and `S` free of finals.
pub fn fa_inclusion_product(a: &Nfa, b: &Nfa, cap: usize) -> Result<bool, OracleError> {
    let map = align_alphabets(a.alphabet(), b.alphabet())?;
    let mut to_b = vec![0; map.len()];
    for (j, &i) in map.iter().enumerate() {
        to_b[i] = j;
    }
    let mut seen: HashSet<(usize, StateSet)> = HashSet::new();
    let mut queue = VecDeque::new();
    for p in a.initial().ones() {
        let pair = (p, b.initial().clone());
        if seen.insert(pair.clone()) {
            queue.push_back(pair);
        }
    }
    while let Some((p, set)) = queue.pop_front() {
        if a.is_final(p) && set.is_disjoint(b.final_states()) {
            return Ok(false);
        }
        for (sym, &bsym) in to_b.iter().enumerate() {
            let next = b.post(&set, bsym);
            for &q in a.succ(p, sym) {
                let pair = (q, next.clone());
                if !seen.contains(&pair) {
                    if seen.len() >= cap {
                        return Err(OracleError::CapExceeded(cap));
                    }
                    seen.insert(pair.clone());
                    queue.push_back(pair);
                }
            }
        }
    }
    Ok(true)
}
