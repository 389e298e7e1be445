//! Alternating Büchi automata: forward and backward simulation, the mediated
//! preorder, and the language-preserving reductions built on them.

use std::collections::HashMap;

use antisim_core::{Aba, Lts, StateId, StateRelation, SymbolId};

use crate::lts_sim::maximal_simulation;
use crate::EngineError;

/// `Y ⪯∀∃ Z`: every member of `Z` lies above some member of `Y`.
pub fn aba_ae(fwd: &StateRelation, y: &[StateId], z: &[StateId]) -> bool {
    z.iter().all(|&b| y.iter().any(|&a| fwd.contains(a, b)))
}

fn check_carrier(rel: &StateRelation, n: usize) -> Result<(), EngineError> {
    if rel.len() != n {
        return Err(EngineError::CarrierMismatch { expected: n, found: rel.len() });
    }
    Ok(())
}

/// The maximal forward simulation, by deleting violating pairs from `⪯α`
/// until nothing changes.
pub fn aba_forward_simulation(aba: &Aba) -> StateRelation {
    let n = aba.num_states();
    let mut rel = StateRelation::from_fn(n, |p, r| !aba.is_accepting(p) || aba.is_accepting(r));
    loop {
        let mut changed = false;
        for p in 0..n {
            for r in 0..n {
                if p == r || !rel.contains(p, r) {
                    continue;
                }
                let ok = (0..aba.num_symbols()).all(|a| {
                    aba.delta(p, a).iter().all(|big_p| aba.delta(r, a).iter().any(|big_r| aba_ae(&rel, big_p, big_r)))
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

/// How [`remove_ambiguity_with`] makes an automaton unambiguous.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AmbiguityRemoval {
    /// Drop each right-hand-side state that lies above a later one.
    #[default]
    Scan,
    /// Merge forward-equivalent states.
    QuotientByForwardEquivalence,
}

/// Whether some right-hand side holds two distinct forward-equivalent states.
pub fn is_ambiguous(aba: &Aba, fwd: &StateRelation) -> bool {
    aba.transitions().any(|(_, _, conj)| {
        conj.iter().enumerate().any(|(i, &x)| conj[i + 1..].iter().any(|&y| fwd.contains(x, y) && fwd.contains(y, x)))
    })
}

pub fn remove_ambiguity(aba: &Aba, fwd: &StateRelation) -> Result<Aba, EngineError> {
    remove_ambiguity_with(aba, fwd, AmbiguityRemoval::Scan)
}

pub fn remove_ambiguity_with(aba: &Aba, fwd: &StateRelation, method: AmbiguityRemoval) -> Result<Aba, EngineError> {
    check_carrier(fwd, aba.num_states())?;
    match method {
        AmbiguityRemoval::Scan => {
            let transitions = aba.transitions().map(|(p, a, conj)| {
                let kept = conj
                    .iter()
                    .enumerate()
                    .filter(|&(i, &x)| !conj[i + 1..].iter().any(|&y| fwd.contains(y, x)))
                    .map(|(_, &x)| x)
                    .collect();
                (p, a, kept)
            });
            Ok(Aba::new(
                aba.state_names().to_vec(),
                aba.alphabet().to_vec(),
                aba.initial(),
                aba.accepting().ones(),
                transitions,
            )?)
        }
        AmbiguityRemoval::QuotientByForwardEquivalence => quotient_aba(aba, &fwd.symmetric_core()),
    }
}

/// A transition `p →a P ∪ {p′}` with `p′` cut out.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbaEnvironment {
    pub source: StateId,
    pub symbol: SymbolId,
    pub residual: Vec<StateId>,
}

/// The LTS of the backward-simulation reduction. State `q < n` is `q⊙`;
/// state `n + i` is `envs[i]`.
#[derive(Debug, Clone)]
pub struct EnvLts {
    pub lts: Lts,
    pub envs: Vec<AbaEnvironment>,
}

pub fn build_env_lts(aba: &Aba) -> EnvLts {
    let n = aba.num_states();
    let mut index: HashMap<AbaEnvironment, usize> = HashMap::new();
    let mut envs = Vec::new();
    let mut edges = Vec::new();
    for (p, a, conj) in aba.transitions() {
        for (i, &x) in conj.iter().enumerate() {
            let mut residual = conj.to_vec();
            residual.remove(i);
            let env = AbaEnvironment { source: p, symbol: a, residual };
            let id = *index.entry(env.clone()).or_insert_with(|| {
                envs.push(env);
                n + envs.len() - 1
            });
            edges.push((x, a, id));
            edges.push((id, a, p));
        }
    }
    let names = aba
        .state_names()
        .iter()
        .cloned()
        .chain(envs.iter().map(|e| {
            let rest: Vec<&str> = e.residual.iter().map(|&q| aba.state_names()[q].as_str()).collect();
            format!("({},{},{{{}}})", aba.state_names()[e.source], aba.alphabet()[e.symbol], rest.join(","))
        }))
        .collect();
    let lts = Lts::new(names, aba.alphabet().to_vec(), edges).expect("environment LTS is well formed");
    EnvLts { lts, envs }
}

/// Environment pairs contributed by one pair of equally labelled transitions,
/// as `(removed from P, removed from R)`.
fn add_pairs(fwd: &StateRelation, big_p: &[StateId], big_r: &[StateId], out: &mut Vec<(StateId, StateId)>) {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        T,
        F,
        One(usize),
    }
    let mut beta = vec![Mark::F; big_r.len()];
    for (i, &p1) in big_p.iter().enumerate() {
        for (j, &r1) in big_r.iter().enumerate() {
            if fwd.contains(p1, r1) {
                beta[j] = if beta[j] == Mark::F { Mark::One(i) } else { Mark::T };
            }
        }
    }
    let mut key = None;
    for (j, &b) in beta.iter().enumerate() {
        if b == Mark::F {
            if key.is_some() {
                return;
            }
            key = Some(j);
        }
    }
    let mut gamma = vec![Mark::F; big_p.len()];
    for (j, &b) in beta.iter().enumerate() {
        if let Mark::One(i) = b {
            gamma[i] = if gamma[i] == Mark::F { Mark::One(j) } else { Mark::T };
        }
    }
    for (i, &p1) in big_p.iter().enumerate() {
        for (j, &r1) in big_r.iter().enumerate() {
            let covered = key.is_none_or(|k| k == j);
            if covered && (gamma[i] == Mark::F || gamma[i] == Mark::One(j)) {
                out.push((p1, r1));
            }
        }
    }
}

/// The initial preorder over the states of [`build_env_lts`]: `⪯ι ∩ ⪯α` on
/// automaton states, and `P ⪯F∀∃ R` on equally labelled environments.
pub fn backward_init_preorder(aba: &Aba, env: &EnvLts, fwd: &StateRelation) -> Result<StateRelation, EngineError> {
    let n = aba.num_states();
    check_carrier(fwd, n)?;
    if !fwd.is_preorder() {
        return Err(EngineError::NotPreorder);
    }
    let total = n + env.envs.len();
    let init = aba.initial();
    let mut rel = StateRelation::empty(total);
    for q in 0..n {
        for r in 0..n {
            if (q != init || r == init) && (!aba.is_accepting(q) || aba.is_accepting(r)) {
                rel.insert(q, r);
            }
        }
    }
    let index: HashMap<&AbaEnvironment, usize> = env.envs.iter().enumerate().map(|(i, e)| (e, n + i)).collect();
    let id = |source, symbol, conj: &[StateId], cut: StateId| {
        let residual = conj.iter().copied().filter(|&x| x != cut).collect();
        index[&AbaEnvironment { source, symbol, residual }]
    };
    let mut pairs = Vec::new();
    for (p, a, big_p) in aba.transitions() {
        for r in 0..n {
            for big_r in aba.delta(r, a) {
                pairs.clear();
                add_pairs(fwd, big_p, big_r, &mut pairs);
                for &(p1, r1) in &pairs {
                    rel.insert(id(p, a, big_p, p1), id(r, a, big_r, r1));
                }
            }
        }
    }
    Ok(rel)
}

/// The maximal backward simulation parametrised by `fwd`.
pub fn aba_backward_simulation(aba: &Aba, fwd: &StateRelation) -> Result<StateRelation, EngineError> {
    let env = build_env_lts(aba);
    let init = backward_init_preorder(aba, &env, fwd)?;
    let sim = maximal_simulation(&env.lts, &init)?;
    let n = aba.num_states();
    Ok(StateRelation::from_fn(n, |q, r| sim.contains(q, r)))
}

/// The greatest `M ⊆ fwd ∘ bwd⁻¹` with `M ∘ fwd ⊆ M`, checked to be a
/// preorder containing `fwd`.
pub fn mediated_preorder(fwd: &StateRelation, bwd: &StateRelation) -> Result<StateRelation, EngineError> {
    check_carrier(bwd, fwd.len())?;
    if !fwd.is_preorder() || !bwd.is_preorder() {
        return Err(EngineError::NotPreorder);
    }
    let bound = fwd.compose(&bwd.inverse());
    let mut med = bound.clone();
    let n = fwd.len();
    loop {
        let mut changed = false;
        for q in 0..n {
            for s in 0..n {
                if med.contains(q, s) && fwd.row(s).ones().any(|r| !med.contains(q, r)) {
                    med.remove(q, s);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if !med.is_preorder() {
        return Err(EngineError::MediatedCheck("result is not a preorder".into()));
    }
    if !fwd.is_subset(&med) {
        return Err(EngineError::MediatedCheck("result does not contain the forward simulation".into()));
    }
    if !med.is_subset(&bound) || !med.compose(fwd).is_subset(&med) {
        return Err(EngineError::MediatedCheck("result is not forward extensible".into()));
    }
    Ok(med)
}

/// Copies the transitions of every state to each state above it in `med`,
/// and makes states `med`-equivalent to an accepting state accepting.
pub fn extend_aba(aba: &Aba, med: &StateRelation) -> Result<Aba, EngineError> {
    let n = aba.num_states();
    check_carrier(med, n)?;
    let transitions: Vec<_> = med
        .pairs()
        .flat_map(|(q, r)| aba.transitions().filter(move |t| t.0 == q).map(move |(_, a, c)| (r, a, c.to_vec())))
        .collect();
    let accepting =
        (0..n).filter(|&p| aba.accepting().ones().any(|q| q == p || (med.contains(q, p) && med.contains(p, q))));
    Ok(Aba::new(aba.state_names().to_vec(), aba.alphabet().to_vec(), aba.initial(), accepting, transitions)?)
}

/// Merges the classes of `equiv`, naming each after its smallest member.
pub fn quotient_aba(aba: &Aba, equiv: &StateRelation) -> Result<Aba, EngineError> {
    check_carrier(equiv, aba.num_states())?;
    if !equiv.is_equivalence() {
        return Err(EngineError::NotEquivalence);
    }
    let classes = equiv.classes();
    let mut class_of = vec![0; aba.num_states()];
    for (c, members) in classes.iter().enumerate() {
        for &q in members {
            class_of[q] = c;
        }
    }
    let names = classes.iter().map(|m| aba.state_names()[m[0]].clone()).collect();
    let transitions = aba
        .transitions()
        .map(|(p, a, c)| (class_of[p], a, c.iter().map(|&q| class_of[q]).collect()))
        .collect::<Vec<_>>();
    Ok(Aba::new(
        names,
        aba.alphabet().to_vec(),
        class_of[aba.initial()],
        aba.accepting().ones().map(|q| class_of[q]),
        transitions,
    )?)
}
