//! Seeded random instance generators.
//!
//! Transition counts follow the density model of Tabakov and Vardi: for
//! every symbol, exactly `round(td·n)` distinct transitions are drawn
//! uniformly without replacement, and `⌈fd·n⌉` final states are drawn
//! uniformly. Each generator is a pure function of its arguments.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Aba, Lts, ModelError, Nfa, RankedSymbol, Rule, StateId, StateRelation, TreeAutomaton};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Default symbol names: `a`, `b`, … for small alphabets, `s<i>` otherwise.
pub fn symbol_names(k: usize) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..k).map(|i| format!("s{i}")).collect()
    }
}

pub fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

fn check_densities(n: usize, td: f64, fd: f64) -> Result<(), ModelError> {
    if n == 0 {
        return Err(ModelError::InvalidParameter("at least one state is required".into()));
    }
    if !(td >= 0.0 && td.is_finite()) {
        return Err(ModelError::InvalidParameter(format!("transition density {td} must be non-negative")));
    }
    if !(0.0..=1.0).contains(&fd) {
        return Err(ModelError::InvalidParameter(format!("final-state density {fd} must lie in [0, 1]")));
    }
    Ok(())
}

fn transition_count(n: usize, td: f64) -> usize {
    (td * n as f64).round() as usize
}

fn final_count(n: usize, fd: f64) -> usize {
    ((fd * n as f64).ceil() as usize).min(n)
}

fn draw_finals(rng: &mut ChaCha8Rng, n: usize, fd: f64) -> Vec<StateId> {
    let mut finals = sample(rng, n, final_count(n, fd)).into_vec();
    finals.sort_unstable();
    finals
}

fn draw_edges(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    td: f64,
    names: &[String],
) -> Result<Vec<(StateId, usize, StateId)>, ModelError> {
    let count = transition_count(n, td);
    let mut edges = Vec::with_capacity(count * k);
    for (a, name) in names.iter().enumerate().take(k) {
        if count > n * n {
            return Err(ModelError::TooManyTransitions { symbol: name.clone(), requested: count, available: n * n });
        }
        for idx in sample(rng, n * n, count) {
            edges.push((idx / n, a, idx % n));
        }
    }
    Ok(edges)
}

/// A random NFA with `n` states, `k` symbols and the single initial state `q0`.
pub fn generate_random_fa(n: usize, k: usize, td: f64, fd: f64, seed: u64) -> Result<Nfa, ModelError> {
    check_densities(n, td, fd)?;
    if k == 0 {
        return Err(ModelError::InvalidParameter("the alphabet must be nonempty".into()));
    }
    let mut rng = rng(seed);
    let alphabet = symbol_names(k);
    let edges = draw_edges(&mut rng, n, k, td, &alphabet)?;
    let finals = draw_finals(&mut rng, n, fd);
    Nfa::new(state_names(n), alphabet, edges, [0], finals)
}

/// A random LTS drawn with the same per-symbol transition counts as
/// [`generate_random_fa`].
pub fn generate_random_lts(n: usize, k: usize, td: f64, seed: u64) -> Result<Lts, ModelError> {
    check_densities(n, td, 0.0)?;
    let mut rng = rng(seed);
    let alphabet = symbol_names(k);
    let edges = draw_edges(&mut rng, n, k, td, &alphabet)?;
    Lts::new(state_names(n), alphabet, edges)
}

/// A random bottom-up tree automaton.
///
/// For a symbol of arity `r ≥ 1`, `round(td·n)` distinct (tuple, target)
/// pairs are drawn from `Qʳ × Q`. Leaf symbols have only `n` candidate
/// rules, so their count is clamped to `n`.
pub fn generate_random_ta(
    n: usize,
    symbols: &[RankedSymbol],
    td: f64,
    fd: f64,
    seed: u64,
) -> Result<TreeAutomaton, ModelError> {
    check_densities(n, td, fd)?;
    if !symbols.iter().any(|s| s.arity == 0) {
        return Err(ModelError::InvalidParameter("at least one leaf symbol is required".into()));
    }
    let mut rng = rng(seed);
    let count = transition_count(n, td);
    let mut rules = Vec::new();
    for (a, sym) in symbols.iter().enumerate() {
        let available = u32::try_from(sym.arity + 1)
            .ok()
            .and_then(|e| n.checked_pow(e))
            .ok_or_else(|| ModelError::InvalidParameter(format!("arity of `{}` is too large", sym.name)))?;
        let wanted = if sym.arity == 0 { count.min(n) } else { count };
        if wanted > available {
            return Err(ModelError::TooManyTransitions { symbol: sym.name.clone(), requested: wanted, available });
        }
        for mut idx in sample(&mut rng, available, wanted) {
            let rhs = idx % n;
            idx /= n;
            let mut lhs = vec![0; sym.arity];
            for slot in lhs.iter_mut().rev() {
                *slot = idx % n;
                idx /= n;
            }
            rules.push(Rule { symbol: a, lhs, rhs });
        }
    }
    let finals = draw_finals(&mut rng, n, fd);
    TreeAutomaton::new(state_names(n), symbols.to_vec(), rules, finals)
}

/// Average number of distinct right-hand sides per used left-hand side:
/// `|Δ| / |{(a, q̄) : ∃q. a(q̄) → q}|`. Zero for an automaton without rules.
pub fn measured_ta_density(ta: &TreeAutomaton) -> f64 {
    let lhs: BTreeSet<_> = ta.rules().iter().map(|r| (r.symbol, &r.lhs)).collect();
    if lhs.is_empty() {
        0.0
    } else {
        ta.rules().len() as f64 / lhs.len() as f64
    }
}

/// Parameters for [`generate_random_aba`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbaParams {
    pub states: usize,
    pub symbols: usize,
    /// Transitions per symbol, as a multiple of the state count.
    pub td: f64,
    pub fd: f64,
    /// Upper bound on the size of a conjunct.
    pub max_conjunct: usize,
    /// Probability that a drawn transition has the empty conjunct.
    pub empty_conjunct: f64,
}

/// A random ABA with initial state `q0`. Each symbol receives
/// `round(td·n)` distinct transitions `p →a P` with uniformly chosen source
/// and a conjunct of uniform size in `1..=max_conjunct`.
pub fn generate_random_aba(params: &AbaParams, seed: u64) -> Result<Aba, ModelError> {
    let AbaParams { states: n, symbols: k, td, fd, max_conjunct, empty_conjunct } = *params;
    check_densities(n, td, fd)?;
    if max_conjunct == 0 || max_conjunct > n {
        return Err(ModelError::InvalidParameter(format!("conjunct bound {max_conjunct} must lie in 1..={n}")));
    }
    if !(0.0..=1.0).contains(&empty_conjunct) {
        return Err(ModelError::InvalidParameter("empty-conjunct probability must lie in [0, 1]".into()));
    }
    let mut rng = rng(seed);
    let count = transition_count(n, td);
    let mut transitions = BTreeSet::new();
    for a in 0..k {
        let mut drawn = BTreeSet::new();
        let mut attempts = 0;
        while drawn.len() < count {
            attempts += 1;
            if attempts > 64 * (count + 1) {
                return Err(ModelError::TooManyTransitions {
                    symbol: symbol_names(k)[a].clone(),
                    requested: count,
                    available: drawn.len(),
                });
            }
            let p = rng.gen_range(0..n);
            let conj: Vec<StateId> = if rng.gen_bool(empty_conjunct) {
                Vec::new()
            } else {
                let size = rng.gen_range(1..=max_conjunct);
                let mut c = sample(&mut rng, n, size).into_vec();
                c.sort_unstable();
                c
            };
            drawn.insert((p, conj));
        }
        transitions.extend(drawn.into_iter().map(|(p, c)| (p, a, c)));
    }
    let finals = draw_finals(&mut rng, n, fd);
    Aba::new(state_names(n), symbol_names(k), 0, finals, transitions)
}

/// A random preorder on `0..n`: a relation with edge probability `density`,
/// closed under reflexivity and transitivity.
pub fn random_preorder(n: usize, density: f64, seed: u64) -> StateRelation {
    let mut rng = rng(seed);
    let mut rel = StateRelation::from_fn(n, |p, r| p == r || rng.gen_bool(density.clamp(0.0, 1.0)));
    for m in 0..n {
        for p in 0..n {
            if rel.contains(p, m) {
                let row = rel.row(m).clone();
                for r in row.ones() {
                    rel.insert(p, r);
                }
            }
        }
    }
    rel
}
