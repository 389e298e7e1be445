//! Word automata: forward simulation, quotienting, and the antichain
//! universality and inclusion checks.

use std::collections::HashSet;

use antisim_core::{union_nfa, Nfa, StateId, StateRelation, StateSet};

use crate::lts_sim::maximal_simulation;
use crate::search::{minimize_macrostate, Engine, Frontier, Order, SimOptions, Verdict};
use crate::EngineError;

/// The maximal forward simulation contained in `{(p, r) : p ∈ F ⟹ r ∈ F}`.
pub fn fa_forward_simulation(nfa: &Nfa) -> StateRelation {
    let init = StateRelation::from_fn(nfa.num_states(), |p, r| !nfa.is_final(p) || nfa.is_final(r));
    maximal_simulation(&nfa.to_lts(), &init).expect("the final-state preorder is a preorder")
}

fn check_carrier(rel: &StateRelation, n: usize) -> Result<(), EngineError> {
    if rel.len() != n {
        return Err(EngineError::CarrierMismatch { expected: n, found: rel.len() });
    }
    Ok(())
}

/// Decides `L(nfa) = Σ*` with the default optimisations.
///
/// For [`Engine::AntichainSim`], `rel` must be a simulation implying
/// language inclusion; it defaults to [`fa_forward_simulation`].
pub fn fa_universality(nfa: &Nfa, engine: Engine, rel: Option<&StateRelation>) -> Result<Verdict, EngineError> {
    fa_universality_with(nfa, engine, rel, SimOptions::default())
}

pub fn fa_universality_with(
    nfa: &Nfa,
    engine: Engine,
    rel: Option<&StateRelation>,
    opts: SimOptions,
) -> Result<Verdict, EngineError> {
    if nfa.num_symbols() == 0 {
        return Err(EngineError::EmptyAlphabet);
    }
    let owned;
    let order = match engine {
        Engine::AntichainSim => match rel {
            Some(r) => {
                check_carrier(r, nfa.num_states())?;
                Order::Sim(r)
            }
            None => {
                owned = fa_forward_simulation(nfa);
                Order::Sim(&owned)
            }
        },
        _ => Order::Identity,
    };
    let minimize = |s: StateSet| match order {
        Order::Sim(r) if opts.minimize => minimize_macrostate(&s, r),
        _ => s,
    };
    let rejecting = |s: &StateSet| s.is_disjoint(nfa.final_states());

    let mut frontier: Frontier<StateSet> = Frontier::new();
    let mut seen: HashSet<StateSet> = HashSet::new();
    let start = minimize(nfa.initial().clone());
    frontier.count_generated();
    if rejecting(&start) {
        return Ok(Verdict { holds: false, stats: frontier.stats, witness: Some(Vec::new()) });
    }
    seen.insert(start.clone());
    frontier.push(start, None, None);
    while let Some(id) = frontier.pop() {
        let current = frontier.item(id).clone();
        for a in 0..nfa.num_symbols() {
            frontier.count_generated();
            let p = minimize(nfa.post(&current, a));
            if rejecting(&p) {
                let mut witness = frontier.word(id);
                witness.push(a);
                return Ok(Verdict { holds: false, stats: frontier.stats, witness: Some(witness) });
            }
            if engine == Engine::Classical {
                if seen.insert(p.clone()) {
                    frontier.push(p, Some(id), Some(a));
                }
                continue;
            }
            if frontier.any_alive(|s| order.ae(s, &p)) {
                continue;
            }
            frontier.purge(|s| order.ae(&p, s));
            frontier.push(p, Some(id), Some(a));
        }
    }
    Ok(Verdict { holds: true, stats: frontier.stats, witness: None })
}

fn alphabets_agree(a: &Nfa, b: &Nfa) -> Result<(), EngineError> {
    let mut x: Vec<&String> = a.alphabet().iter().collect();
    let mut y: Vec<&String> = b.alphabet().iter().collect();
    x.sort();
    y.sort();
    if x != y {
        return Err(EngineError::AlphabetMismatch(format!("{:?} versus {:?}", a.alphabet(), b.alphabet())));
    }
    Ok(())
}

/// Decides `L(a) ⊆ L(b)` with the default optimisations.
///
/// For [`Engine::AntichainSim`], `rel` is a relation over the states of
/// `union_nfa(a, b)`; it defaults to the forward simulation of the union.
/// Witness words use the symbol numbering of `a`.
pub fn fa_inclusion(a: &Nfa, b: &Nfa, engine: Engine, rel: Option<&StateRelation>) -> Result<Verdict, EngineError> {
    fa_inclusion_with(a, b, engine, rel, SimOptions::default())
}

pub fn fa_inclusion_with(
    a: &Nfa,
    b: &Nfa,
    engine: Engine,
    rel: Option<&StateRelation>,
    opts: SimOptions,
) -> Result<Verdict, EngineError> {
    alphabets_agree(a, b)?;
    let u = union_nfa(a, b);
    let na = a.num_states();
    let owned;
    let order = match engine {
        Engine::AntichainSim => match rel {
            Some(r) => {
                check_carrier(r, u.num_states())?;
                Order::Sim(r)
            }
            None => {
                owned = fa_forward_simulation(&u);
                Order::Sim(&owned)
            }
        },
        _ => Order::Identity,
    };
    let sim = engine == Engine::AntichainSim;
    let minimize = |s: StateSet| match order {
        Order::Sim(r) if opts.minimize => minimize_macrostate(&s, r),
        _ => s,
    };
    let mut b_initial = u.empty_set();
    for q in u.initial().ones().filter(|&q| q >= na) {
        b_initial.insert(q);
    }
    let accepting = |p: StateId, set: &StateSet| u.is_final(p) && set.is_disjoint(u.final_states());

    let mut frontier: Frontier<(StateId, StateSet)> = Frontier::new();
    let mut seen: HashSet<(StateId, StateSet)> = HashSet::new();
    // Adds a candidate unless pruned; `true` means it is accepting.
    let mut offer = |frontier: &mut Frontier<(StateId, StateSet)>,
                     p: StateId,
                     set: StateSet,
                     parent: Option<usize>,
                     symbol: Option<usize>|
     -> bool {
        frontier.count_generated();
        if accepting(p, &set) {
            return true;
        }
        if engine == Engine::Classical {
            let key = (p, set);
            if seen.insert(key.clone()) {
                frontier.push(key, parent, symbol);
            }
            return false;
        }
        if sim && opts.opt1b && set.ones().any(|x| order.leq(p, x)) {
            return false;
        }
        if frontier.any_alive(|(s, ss)| order.leq(p, *s) && order.ae(ss, &set)) {
            return false;
        }
        frontier.purge(|(s, ss)| order.leq(*s, p) && order.ae(&set, ss));
        frontier.push((p, set), parent, symbol);
        false
    };

    let start = minimize(b_initial);
    for i in a.initial().ones() {
        if offer(&mut frontier, i, start.clone(), None, None) {
            return Ok(Verdict { holds: false, stats: frontier.stats, witness: Some(Vec::new()) });
        }
    }
    while let Some(id) = frontier.pop() {
        let (r, set) = frontier.item(id).clone();
        for x in 0..u.num_symbols() {
            let targets = u.succ(r, x);
            if targets.is_empty() {
                continue;
            }
            let next = minimize(u.post(&set, x));
            for &p in targets {
                if offer(&mut frontier, p, next.clone(), Some(id), Some(x)) {
                    let mut witness = frontier.word(id);
                    witness.push(x);
                    return Ok(Verdict { holds: false, stats: frontier.stats, witness: Some(witness) });
                }
            }
        }
    }
    Ok(Verdict { holds: true, stats: frontier.stats, witness: None })
}

/// Merges the classes of `equiv`. Each class is named after its smallest
/// member; transitions, initial and final states are lifted class-wise.
pub fn quotient_nfa(nfa: &Nfa, equiv: &StateRelation) -> Result<Nfa, EngineError> {
    check_carrier(equiv, nfa.num_states())?;
    if !equiv.is_equivalence() {
        return Err(EngineError::NotEquivalence);
    }
    let classes = equiv.classes();
    let mut class_of = vec![0; nfa.num_states()];
    for (c, members) in classes.iter().enumerate() {
        for &q in members {
            class_of[q] = c;
        }
    }
    let names = classes.iter().map(|m| nfa.state_names()[m[0]].clone()).collect();
    let transitions = nfa.transitions().iter().map(|&(p, a, q)| (class_of[p], a, class_of[q]));
    let initial = nfa.initial().ones().map(|q| class_of[q]);
    let finals = nfa.final_states().ones().map(|q| class_of[q]);
    Ok(Nfa::new(names, nfa.alphabet().to_vec(), transitions, initial, finals)?)
}
