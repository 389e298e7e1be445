use std::collections::BTreeSet;

use antisim_core::{Nfa, SymbolId};

/// All words over `0..k` of length at most `max_len`, shortest first.
pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<SymbolId>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * k);
        for w in &layer {
            for a in 0..k {
                let mut v: Vec<SymbolId> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The accepted words of length at most `max_len`, decided by explicit
/// path search.
pub fn word_language_bounded(nfa: &Nfa, max_len: usize) -> BTreeSet<Vec<SymbolId>> {
    all_words(nfa.num_symbols(), max_len).into_iter().filter(|w| accepts_by_paths(nfa, w)).collect()
}

fn accepts_by_paths(nfa: &Nfa, word: &[SymbolId]) -> bool {
    fn walk(nfa: &Nfa, q: usize, word: &[SymbolId]) -> bool {
        match word.split_first() {
            None => nfa.is_final(q),
            Some((&a, rest)) => nfa.transitions().iter().any(|&(p, b, r)| p == q && b == a && walk(nfa, r, rest)),
        }
    }
    nfa.initial().ones().any(|q| walk(nfa, q, word))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_words() {
        assert_eq!(all_words(2, 3).len(), 15);
        assert_eq!(all_words(0, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn empty_automaton_has_empty_language() {
        let nfa = Nfa::new(vec![], vec!["a".into()], [], [], []).unwrap();
        assert!(word_language_bounded(&nfa, 4).is_empty());
    }

    #[test]
    fn two_state_language() {
        // p -a-> q, q final: exactly the word "a".
        let nfa = Nfa::new(vec!["p".into(), "q".into()], vec!["a".into()], [(0, 0, 1)], [0], [1]).unwrap();
        assert_eq!(word_language_bounded(&nfa, 3), BTreeSet::from([vec![0]]));
    }
}
