//! Tree automata: upward simulation through an environment LTS, and the
//! antichain universality and inclusion checks over macro-state tuples.

use std::collections::{HashMap, HashSet};

use antisim_core::{union_ta, Lts, StateId, StateRelation, StateSet, SymbolId, TreeAutomaton};

use crate::lts_sim::maximal_simulation;
use crate::search::{minimize_macrostate, Engine, Frontier, Order, SimOptions, Verdict};
use crate::EngineError;

/// A rule with one left-hand-side position cut out.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaEnvironment {
    pub symbol: SymbolId,
    /// Zero-based hole position.
    pub position: usize,
    /// The remaining left-hand-side states, in order.
    pub context: Vec<StateId>,
    pub result: StateId,
}

/// The LTS whose simulation, restricted to the first `|Q|` states, is the
/// maximal upward simulation. Returns the LTS, the environments (LTS state
/// `|Q| + i` is environment `i`) and the initial preorder.
pub fn upward_env_lts(ta: &TreeAutomaton) -> (Lts, Vec<TaEnvironment>, StateRelation) {
    let n = ta.num_states();
    let mut labels: HashMap<(SymbolId, usize), usize> = HashMap::new();
    let mut label_names = Vec::new();
    for (a, sym) in ta.symbols().iter().enumerate() {
        for i in 0..sym.arity {
            labels.insert((a, i), label_names.len());
            label_names.push(format!("{}#{}", sym.name, i + 1));
        }
    }
    let mut env_index: HashMap<TaEnvironment, usize> = HashMap::new();
    let mut envs = Vec::new();
    let mut edges = Vec::new();
    for rule in ta.rules() {
        for (i, &q) in rule.lhs.iter().enumerate() {
            let mut context = rule.lhs.clone();
            context.remove(i);
            let env = TaEnvironment { symbol: rule.symbol, position: i, context, result: rule.rhs };
            let id = *env_index.entry(env.clone()).or_insert_with(|| {
                envs.push(env);
                n + envs.len() - 1
            });
            let label = labels[&(rule.symbol, i)];
            edges.push((q, label, id));
            edges.push((id, label, rule.rhs));
        }
    }
    let total = n + envs.len();
    let names = (0..total).map(|i| i.to_string()).collect();
    let lts = Lts::new(names, label_names, edges).expect("environment LTS is well formed");
    let init = StateRelation::from_fn(total, |x, y| match (x < n, y < n) {
        (true, true) => !ta.is_final(x) || ta.is_final(y),
        (false, false) => {
            let (e, f) = (&envs[x - n], &envs[y - n]);
            e.symbol == f.symbol && e.position == f.position && e.context == f.context
        }
        _ => false,
    });
    (lts, envs, init)
}

/// The maximal upward simulation induced by the identity.
pub fn ta_upward_simulation(ta: &TreeAutomaton) -> StateRelation {
    let n = ta.num_states();
    let (lts, _, init) = upward_env_lts(ta);
    let sim = maximal_simulation(&lts, &init).expect("initial relation is a preorder");
    StateRelation::from_fn(n, |q, r| sim.contains(q, r))
}

/// `I_a` for every leaf symbol `a`, in symbol order.
pub fn initial_macrostates(ta: &TreeAutomaton) -> Result<Vec<(SymbolId, StateSet)>, EngineError> {
    let out: Vec<_> = ta
        .leaf_symbols()
        .map(|a| {
            let mut set = ta.empty_set();
            for &q in ta.targets(a, &[]) {
                set.insert(q);
            }
            (a, set)
        })
        .collect();
    if out.is_empty() {
        return Err(EngineError::NoLeafSymbol);
    }
    Ok(out)
}

/// `Post_a(P1, …, Pn)`: targets of all `a`-rules whose i-th child lies in `Pi`.
pub fn post_tuple(ta: &TreeAutomaton, tuple: &[&StateSet], a: SymbolId) -> Result<StateSet, EngineError> {
    if tuple.len() != ta.arity(a) {
        return Err(EngineError::ArityMismatch {
            symbol: ta.symbols()[a].name.clone(),
            expected: ta.arity(a),
            found: tuple.len(),
        });
    }
    Ok(post_unchecked(ta, tuple, a))
}

fn post_unchecked(ta: &TreeAutomaton, tuple: &[&StateSet], a: SymbolId) -> StateSet {
    let mut out = ta.empty_set();
    for rule in ta.rules_for(a) {
        if rule.lhs.iter().zip(tuple).all(|(&q, s)| s.contains(q)) {
            out.insert(rule.rhs);
        }
    }
    out
}

/// All index tuples of length `arity` over `0..m` that contain `m - 1`, in
/// lexicographic order.
pub(crate) fn tuples_with_last(m: usize, arity: usize) -> Vec<Vec<usize>> {
    let pivot = m - 1;
    let mut out = Vec::new();
    for first in 0..arity {
        let mut digits = vec![0usize; arity];
        digits[first] = pivot;
        let free: Vec<usize> = (0..arity).filter(|&j| j != first).collect();
        loop {
            out.push(digits.clone());
            let mut carried = true;
            for &j in free.iter().rev() {
                let limit = if j < first { pivot } else { m };
                digits[j] += 1;
                if digits[j] < limit {
                    carried = false;
                    break;
                }
                digits[j] = 0;
            }
            if carried {
                break;
            }
        }
        if first > 0 && pivot == 0 {
            break;
        }
    }
    out.retain(|t| {
        let first = t.iter().position(|&d| d == pivot);
        first.is_some() && t[..first.unwrap()].iter().all(|&d| d != pivot)
    });
    out.sort_unstable();
    out.dedup();
    out
}

fn resolve_order<'a>(
    engine: Engine,
    rel: Option<&'a StateRelation>,
    owned: &'a mut Option<StateRelation>,
    ta: &TreeAutomaton,
) -> Result<Order<'a>, EngineError> {
    Ok(match engine {
        Engine::AntichainSim => match rel {
            Some(r) => {
                if r.len() != ta.num_states() {
                    return Err(EngineError::CarrierMismatch { expected: ta.num_states(), found: r.len() });
                }
                Order::Sim(r)
            }
            None => Order::Sim(owned.insert(ta_upward_simulation(ta))),
        },
        _ => Order::Identity,
    })
}

fn verdict(holds: bool, frontier: &Frontier<impl Clone + Eq + std::hash::Hash>) -> Verdict {
    Verdict { holds, stats: frontier.stats, witness: None }
}

/// Decides whether `ta` accepts every tree over its ranked alphabet.
///
/// For [`Engine::AntichainSim`], `rel` defaults to [`ta_upward_simulation`].
pub fn ta_universality(
    ta: &TreeAutomaton,
    engine: Engine,
    rel: Option<&StateRelation>,
) -> Result<Verdict, EngineError> {
    ta_universality_with(ta, engine, rel, SimOptions::default())
}

pub fn ta_universality_with(
    ta: &TreeAutomaton,
    engine: Engine,
    rel: Option<&StateRelation>,
    opts: SimOptions,
) -> Result<Verdict, EngineError> {
    let leaves = initial_macrostates(ta)?;
    let mut owned = None;
    let order = resolve_order(engine, rel, &mut owned, ta)?;
    let minimize = |s: StateSet| match order {
        Order::Sim(r) if opts.minimize => minimize_macrostate(&s, r),
        _ => s,
    };
    let rejecting = |s: &StateSet| s.is_disjoint(ta.final_states());
    let mut frontier: Frontier<StateSet> = Frontier::new();
    let mut seen: HashSet<StateSet> = HashSet::new();
    let mut offer = |frontier: &mut Frontier<StateSet>, p: StateSet| {
        if engine == Engine::Classical {
            if seen.insert(p.clone()) {
                frontier.push(p, None, None);
            }
        } else if !frontier.any_alive(|s| order.ae(s, &p)) {
            frontier.purge(|s| order.ae(&p, s));
            frontier.push(p, None, None);
        }
    };

    let starts: Vec<StateSet> = leaves.into_iter().map(|(_, s)| minimize(s)).collect();
    for _ in &starts {
        frontier.count_generated();
    }
    if starts.iter().any(rejecting) {
        return Ok(verdict(false, &frontier));
    }
    for s in starts {
        offer(&mut frontier, s);
    }
    let inner: Vec<SymbolId> = (0..ta.symbols().len()).filter(|&a| ta.arity(a) > 0).collect();
    while frontier.pop().is_some() {
        let snapshot: Vec<StateSet> = frontier.processed().into_iter().map(|i| frontier.item(i).clone()).collect();
        for &a in &inner {
            for tuple in tuples_with_last(snapshot.len(), ta.arity(a)) {
                let args: Vec<&StateSet> = tuple.iter().map(|&i| &snapshot[i]).collect();
                frontier.count_generated();
                let p = minimize(post_unchecked(ta, &args, a));
                if rejecting(&p) {
                    return Ok(verdict(false, &frontier));
                }
                offer(&mut frontier, p);
            }
        }
    }
    Ok(verdict(true, &frontier))
}

/// Decides `L(a) ⊆ L(b)`.
///
/// For [`Engine::AntichainSim`], `rel` is a relation over the states of
/// `union_ta(a, b)`; it defaults to the upward simulation of the union.
pub fn ta_inclusion(
    a: &TreeAutomaton,
    b: &TreeAutomaton,
    engine: Engine,
    rel: Option<&StateRelation>,
) -> Result<Verdict, EngineError> {
    ta_inclusion_with(a, b, engine, rel, SimOptions::default())
}

pub fn ta_inclusion_with(
    a: &TreeAutomaton,
    b: &TreeAutomaton,
    engine: Engine,
    rel: Option<&StateRelation>,
    opts: SimOptions,
) -> Result<Verdict, EngineError> {
    let u = union_ta(a, b)?;
    let na = a.num_states();
    let leaves = initial_macrostates(&u)?;
    let mut owned = None;
    let order = resolve_order(engine, rel, &mut owned, &u)?;
    let sim = engine == Engine::AntichainSim;
    let minimize = |s: StateSet| match order {
        Order::Sim(r) if opts.minimize => minimize_macrostate(&s, r),
        _ => s,
    };
    let accepting = |p: StateId, set: &StateSet| u.is_final(p) && set.is_disjoint(u.final_states());
    let split = |set: &StateSet| -> (Vec<StateId>, StateSet) {
        let mut right = u.empty_set();
        let mut left = Vec::new();
        for q in set.ones() {
            if q < na {
                left.push(q);
            } else {
                right.insert(q);
            }
        }
        (left, right)
    };

    type Product = (StateId, StateSet);
    let mut frontier: Frontier<Product> = Frontier::new();
    let mut seen: HashSet<Product> = HashSet::new();
    // Offers one product-state; `true` means it is accepting.
    let mut offer = |frontier: &mut Frontier<Product>, p: StateId, set: StateSet| -> bool {
        frontier.count_generated();
        if accepting(p, &set) {
            return true;
        }
        if engine == Engine::Classical {
            if seen.insert((p, set.clone())) {
                frontier.push((p, set), None, None);
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
        frontier.push((p, set), None, None);
        false
    };

    for (_, ia) in &leaves {
        let (lefts, right) = split(ia);
        let right = minimize(right);
        for p in lefts {
            if offer(&mut frontier, p, right.clone()) {
                return Ok(verdict(false, &frontier));
            }
        }
    }
    let inner: Vec<SymbolId> = (0..u.symbols().len()).filter(|&x| u.arity(x) > 0).collect();
    while frontier.pop().is_some() {
        let snapshot: Vec<Product> = frontier.processed().into_iter().map(|i| frontier.item(i).clone()).collect();
        for &x in &inner {
            for tuple in tuples_with_last(snapshot.len(), u.arity(x)) {
                let lhs: Vec<StateId> = tuple.iter().map(|&i| snapshot[i].0).collect();
                let targets = u.targets(x, &lhs);
                if targets.is_empty() {
                    continue;
                }
                let args: Vec<&StateSet> = tuple.iter().map(|&i| &snapshot[i].1).collect();
                let next = minimize(post_unchecked(&u, &args, x));
                for &p in targets {
                    if offer(&mut frontier, p, next.clone()) {
                        return Ok(verdict(false, &frontier));
                    }
                }
            }
        }
    }
    Ok(verdict(true, &frontier))
}
