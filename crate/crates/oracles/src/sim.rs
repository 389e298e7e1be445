use std::collections::BTreeSet;

use antisim_core::{Aba, Lts, StateId, StateRelation, SymbolId, TreeAutomaton};

/// Greatest fixpoint of the simulation condition inside `init`, obtained by
/// deleting violating pairs until nothing changes.
pub fn naive_lts_simulation(lts: &Lts, init: &StateRelation) -> StateRelation {
    let mut rel = init.clone();
    let n = lts.num_states();
    loop {
        let mut changed = false;
        for p in 0..n {
            for r in 0..n {
                if !rel.contains(p, r) {
                    continue;
                }
                let ok = (0..lts.num_symbols())
                    .all(|a| lts.succ(p, a).iter().all(|&p2| lts.succ(r, a).iter().any(|&r2| rel.contains(p2, r2))));
                if !ok {
                    rel.remove(p, r);
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Largest bisimulation inside the equivalence `init`, by pair deletion.
pub fn naive_lts_bisimulation(lts: &Lts, init: &StateRelation) -> StateRelation {
    let mut rel = init.clone();
    let n = lts.num_states();
    let matched = |rel: &StateRelation, p: StateId, r: StateId, a: SymbolId| {
        lts.succ(p, a).iter().all(|&p2| lts.succ(r, a).iter().any(|&r2| rel.contains(p2, r2)))
    };
    loop {
        let mut changed = false;
        for p in 0..n {
            for r in 0..n {
                if rel.contains(p, r)
                    && !(0..lts.num_symbols()).all(|a| matched(&rel, p, r, a) && matched(&rel, r, p, a))
                {
                    rel.remove(p, r);
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// The maximal upward simulation induced by identity, by definition
/// unfolding: `q ⪯ r` needs `q ∈ F ⟹ r ∈ F`, and every rule with `q` at some
/// position must be matched by a rule with `r` at that position, the same
/// context and a larger target.
pub fn naive_upward_simulation(ta: &TreeAutomaton) -> StateRelation {
    let n = ta.num_states();
    let mut rel = StateRelation::from_fn(n, |q, r| !ta.is_final(q) || ta.is_final(r));
    loop {
        let mut changed = false;
        for q in 0..n {
            for r in 0..n {
                if q == r || !rel.contains(q, r) {
                    continue;
                }
                let ok = ta.rules().iter().all(|rule| {
                    rule.lhs.iter().enumerate().filter(|&(_, &x)| x == q).all(|(i, _)| {
                        let mut lhs = rule.lhs.clone();
                        lhs[i] = r;
                        ta.rules()
                            .iter()
                            .any(|m| m.symbol == rule.symbol && m.lhs == lhs && rel.contains(rule.rhs, m.rhs))
                    })
                });
                if !ok {
                    rel.remove(q, r);
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// `Y ⪯∀∃ Z` in the alternating sense: every member of `Z` is above some member of `Y`.
fn upward_covered(fwd: &StateRelation, y: &[StateId], z: &[StateId]) -> bool {
    z.iter().all(|&b| y.iter().any(|&a| fwd.contains(a, b)))
}

fn without(set: &[StateId], x: StateId) -> Vec<StateId> {
    set.iter().copied().filter(|&y| y != x).collect()
}

/// The maximal backward simulation parametrised by `fwd`, computed directly
/// from its definition.
pub fn naive_backward_simulation_aba(aba: &Aba, fwd: &StateRelation) -> StateRelation {
    let n = aba.num_states();
    let init = aba.initial();
    let mut rel =
        StateRelation::from_fn(n, |q, r| (q != init || r == init) && (!aba.is_accepting(q) || aba.is_accepting(r)));
    let transitions: Vec<(StateId, SymbolId, Vec<StateId>)> =
        aba.transitions().map(|(p, a, c)| (p, a, c.to_vec())).collect();
    loop {
        let mut changed = false;
        for p in 0..n {
            for r in 0..n {
                if !rel.contains(p, r) {
                    continue;
                }
                let ok = transitions.iter().filter(|(_, _, t)| t.contains(&p)).all(|(q, a, t)| {
                    let rest = without(t, p);
                    transitions.iter().any(|(s, b, u)| {
                        b == a && u.contains(&r) && rel.contains(*q, *s) && upward_covered(fwd, &rest, &without(u, r))
                    })
                });
                if !ok {
                    rel.remove(p, r);
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// An environment `(p, a, P)` named by its contents.
pub type EnvKey = (StateId, SymbolId, Vec<StateId>);

/// The initial preorder of the backward-simulation reduction, split into the
/// state part and the environment part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveEnvPreorder {
    pub states: StateRelation,
    pub envs: BTreeSet<(EnvKey, EnvKey)>,
}

/// Compares every pair of environments directly.
pub fn naive_env_preorder(aba: &Aba, fwd: &StateRelation) -> NaiveEnvPreorder {
    let n = aba.num_states();
    let init = aba.initial();
    let states =
        StateRelation::from_fn(n, |q, r| (q != init || r == init) && (!aba.is_accepting(q) || aba.is_accepting(r)));
    let mut envs: BTreeSet<EnvKey> = BTreeSet::new();
    for (p, a, conj) in aba.transitions() {
        for &x in conj {
            envs.insert((p, a, without(conj, x)));
        }
    }
    let mut pairs = BTreeSet::new();
    for e in &envs {
        for f in &envs {
            if e.1 == f.1 && upward_covered(fwd, &e.2, &f.2) {
                pairs.insert((e.clone(), f.clone()));
            }
        }
    }
    NaiveEnvPreorder { states, envs: pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use antisim_core::{RankedSymbol, Rule};

    #[test]
    fn full_init_on_edgeless_lts_is_kept() {
        let lts = Lts::anonymous(3, 1, []).unwrap();
        assert_eq!(naive_lts_simulation(&lts, &StateRelation::full(3)), StateRelation::full(3));
    }

    #[test]
    fn two_state_lts_by_hand() {
        // 0 -a-> 1, 1 has no move: 1 ⪯ 0 holds, 0 ⪯ 1 does not.
        let lts = Lts::anonymous(2, 1, [(0, 0, 1)]).unwrap();
        let sim = naive_lts_simulation(&lts, &StateRelation::full(2));
        assert_eq!(sim, StateRelation::from_pairs(2, [(0, 0), (1, 1), (1, 0)]));
    }

    #[test]
    fn upward_two_state_by_hand() {
        // a -> q0, a -> q1, f(q0) -> q1, f(q1) -> q1, final q1.
        let ta = TreeAutomaton::new(
            vec!["q0".into(), "q1".into()],
            vec![RankedSymbol::new("a", 0), RankedSymbol::new("f", 1)],
            [
                Rule { symbol: 0, lhs: vec![], rhs: 0 },
                Rule { symbol: 0, lhs: vec![], rhs: 1 },
                Rule { symbol: 1, lhs: vec![0], rhs: 1 },
                Rule { symbol: 1, lhs: vec![1], rhs: 1 },
            ],
            [1],
        )
        .unwrap();
        let sim = naive_upward_simulation(&ta);
        assert_eq!(sim, StateRelation::from_pairs(2, [(0, 0), (1, 1), (0, 1)]));
        let empty = TreeAutomaton::new(vec![], vec![RankedSymbol::new("a", 0)], [], []).unwrap();
        assert_eq!(naive_upward_simulation(&empty).len(), 0);
    }

    #[test]
    fn backward_two_state_by_hand() {
        // s0 -a-> {s1}, s1 -a-> {s1}; initial s0, all accepting.
        let aba =
            Aba::new(vec!["s0".into(), "s1".into()], vec!["a".into()], 0, [0, 1], [(0, 0, vec![1]), (1, 0, vec![1])])
                .unwrap();
        let fwd = StateRelation::full(2);
        let bwd = naive_backward_simulation_aba(&aba, &fwd);
        // s0 ⪯ s1 breaks the initial-state condition; s1 ⪯ s0 fails because
        // no transition has s0 on its right-hand side.
        assert_eq!(bwd, StateRelation::identity(2));
        let env = naive_env_preorder(&aba, &fwd);
        assert_eq!(env.envs.len(), 4);
    }
}
