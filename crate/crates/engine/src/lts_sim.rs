//! Maximal simulations on labelled transition systems by partition-relation
//! refinement, and bisimulation by plain partition refinement.

use std::collections::HashMap;
use std::fmt;

use antisim_core::{Lts, StateId, StateRelation};
use fixedbitset::FixedBitSet;

use crate::EngineError;

/// A partition of the states together with a relation on its blocks.
///
/// The pair induces the state relation `∪{B × C : (B, C) ∈ rel}`. Values
/// produced by this module are canonical: blocks are ordered by their
/// smallest member and members ascend within each block.
#[derive(Clone, PartialEq, Eq)]
pub struct PartitionRelationPair {
    blocks: Vec<Vec<StateId>>,
    rel: Vec<FixedBitSet>,
    block_of: Vec<usize>,
}

impl PartitionRelationPair {
    /// Validates and canonicalizes a pair over the states `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<StateId>>, rel: &[(usize, usize)]) -> Result<Self, EngineError> {
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(EngineError::InvalidPartition(format!("block {i} is empty")));
            }
            for &q in block {
                if q >= n {
                    return Err(EngineError::InvalidPartition(format!("state {q} is out of range")));
                }
                if block_of[q] != usize::MAX {
                    return Err(EngineError::InvalidPartition(format!("state {q} lies in two blocks")));
                }
                block_of[q] = i;
            }
        }
        if let Some(q) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(EngineError::InvalidPartition(format!("state {q} is in no block")));
        }
        let m = blocks.len();
        let mut matrix = vec![FixedBitSet::with_capacity(m); m];
        for &(b, c) in rel {
            if b >= m || c >= m {
                return Err(EngineError::InvalidPartition(format!("block pair ({b}, {c}) is out of range")));
            }
            matrix[b].insert(c);
        }
        Ok(Self::canonical(n, blocks, matrix))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<StateId>>, rel: Vec<FixedBitSet>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&b| blocks[b][0]);
        let mut rank = vec![0; blocks.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let m = blocks.len();
        let mut new_rel = vec![FixedBitSet::with_capacity(m); m];
        for (b, row) in rel.iter().enumerate() {
            for c in row.ones() {
                new_rel[rank[b]].insert(rank[c]);
            }
        }
        let new_blocks: Vec<Vec<StateId>> = order.iter().map(|&b| std::mem::take(&mut blocks[b])).collect();
        let mut block_of = vec![0; n];
        for (i, block) in new_blocks.iter().enumerate() {
            for &q in block {
                block_of[q] = i;
            }
        }
        PartitionRelationPair { blocks: new_blocks, rel: new_rel, block_of }
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn block_of(&self, q: StateId) -> usize {
        self.block_of[q]
    }

    pub fn related(&self, b: usize, c: usize) -> bool {
        self.rel[b].contains(c)
    }

    pub fn block_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.iter().enumerate().flat_map(|(b, row)| row.ones().map(move |c| (b, c)))
    }

    /// The induced state relation `∪{B × C : (B, C) ∈ rel}`.
    pub fn induced(&self) -> StateRelation {
        let n = self.num_states();
        let mut out = StateRelation::empty(n);
        for (b, c) in self.block_pairs() {
            for &p in &self.blocks[b] {
                for &r in &self.blocks[c] {
                    out.insert(p, r);
                }
            }
        }
        out
    }

    fn rel_is_preorder(&self) -> bool {
        let m = self.blocks.len();
        let as_rel = StateRelation::from_fn(m, |b, c| self.rel[b].contains(c));
        as_rel.is_preorder()
    }
}

impl fmt::Debug for PartitionRelationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Text dump: one line per block, `B<i> {members} <= B<j> …`.
impl fmt::Display for PartitionRelationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks.iter().enumerate() {
            write!(f, "B{b} {block:?} <=")?;
            for c in self.rel[b].ones() {
                write!(f, " B{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The coarsest partition-relation pair inducing `preorder`: blocks are the
/// classes of `preorder ∩ preorder⁻¹`.
pub fn coarsest_pr(preorder: &StateRelation) -> Result<PartitionRelationPair, EngineError> {
    if !preorder.is_preorder() {
        return Err(EngineError::NotPreorder);
    }
    let n = preorder.len();
    let blocks = preorder.symmetric_core().classes();
    let mut rel = vec![FixedBitSet::with_capacity(blocks.len()); blocks.len()];
    for (b, bb) in blocks.iter().enumerate() {
        for (c, cc) in blocks.iter().enumerate() {
            if preorder.contains(bb[0], cc[0]) {
                rel[b].insert(c);
            }
        }
    }
    Ok(PartitionRelationPair::canonical(n, blocks, rel))
}

/// One pivot selection, recorded by [`compute_simulation_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsumedRemove {
    pub symbol: usize,
    /// States of the pivot block when it was selected.
    pub block: Vec<StateId>,
    pub remove: Vec<StateId>,
}

/// Debug record of a run: the pair at every agenda pop, and every consumed
/// `Remove` set.
#[derive(Debug, Clone, Default)]
pub struct SimTrace {
    pub snapshots: Vec<PartitionRelationPair>,
    pub consumed: Vec<ConsumedRemove>,
}

/// Measured size of the result, for comparing the two space bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimSpace {
    pub blocks: usize,
    /// `|P_sim|²`, the size of the block relation.
    pub rel_cells: usize,
    /// `|Σ|·|P_sim|·|Q|`, the number of live counters.
    pub count_cells: usize,
}

pub fn simulation_space(lts: &Lts, result: &PartitionRelationPair) -> SimSpace {
    let blocks = result.blocks().len();
    SimSpace { blocks, rel_cells: blocks * blocks, count_cells: lts.num_symbols() * blocks * lts.num_states() }
}

/// Computes the coarsest partition-relation pair inducing the maximal
/// simulation on `lts` contained in the preorder induced by `init`.
pub fn compute_simulation(lts: &Lts, init: &PartitionRelationPair) -> Result<PartitionRelationPair, EngineError> {
    Workspace::new(lts, init, false)?.run().map(|(pr, _)| pr)
}

/// As [`compute_simulation`], also returning a [`SimTrace`].
pub fn compute_simulation_traced(
    lts: &Lts,
    init: &PartitionRelationPair,
) -> Result<(PartitionRelationPair, SimTrace), EngineError> {
    Workspace::new(lts, init, true)?.run()
}

/// The maximal simulation on `lts` contained in the preorder `init`.
pub fn maximal_simulation(lts: &Lts, init: &StateRelation) -> Result<StateRelation, EngineError> {
    if init.len() != lts.num_states() {
        return Err(EngineError::CarrierMismatch { expected: lts.num_states(), found: init.len() });
    }
    Ok(compute_simulation(lts, &coarsest_pr(init)?)?.induced())
}

const NIL: usize = usize::MAX;

struct Workspace<'a> {
    lts: &'a Lts,
    n: usize,
    k: usize,
    members: Vec<Vec<StateId>>,
    pos: Vec<usize>,
    block_of: Vec<usize>,
    rel: Vec<FixedBitSet>,
    /// `remove[a][B]`
    remove: Vec<Vec<Vec<StateId>>>,
    nonempty: Vec<usize>,
    /// `count[(a * n + r) * n + B]`
    count: Vec<u32>,
    prev: Vec<usize>,
    next: Vec<usize>,
    head: usize,
    listed: Vec<bool>,
    trace: Option<SimTrace>,
}

impl<'a> Workspace<'a> {
    fn new(lts: &'a Lts, init: &PartitionRelationPair, trace: bool) -> Result<Self, EngineError> {
        let n = lts.num_states();
        if init.num_states() != n {
            return Err(EngineError::InvalidPartition(format!(
                "pair covers {} states but the LTS has {n}",
                init.num_states()
            )));
        }
        if !init.rel_is_preorder() {
            return Err(EngineError::NotPreorder);
        }
        let k = lts.num_symbols();
        let m = init.blocks().len();
        let mut ws = Workspace {
            lts,
            n,
            k,
            members: vec![Vec::new(); n],
            pos: vec![0; n],
            block_of: init.block_of.clone(),
            rel: vec![FixedBitSet::with_capacity(n); n],
            remove: vec![vec![Vec::new(); n]; k],
            nonempty: vec![0; n],
            count: vec![0; k * n * n],
            prev: vec![NIL; n],
            next: vec![NIL; n],
            head: NIL,
            listed: vec![false; n],
            trace: trace.then(SimTrace::default),
        };
        for (b, block) in init.blocks().iter().enumerate() {
            for (i, &q) in block.iter().enumerate() {
                ws.pos[q] = i;
            }
            ws.members[b] = block.clone();
            for c in init.rel[b].ones() {
                ws.rel[b].insert(c);
            }
        }
        for b in 0..m {
            let mut upper = FixedBitSet::with_capacity(n);
            for c in ws.rel[b].ones() {
                for &q in &ws.members[c] {
                    upper.insert(q);
                }
            }
            for a in 0..k {
                let mut pre = FixedBitSet::with_capacity(n);
                for q in upper.ones() {
                    for &r in lts.pre(a, q) {
                        pre.insert(r);
                    }
                }
                pre.toggle_range(..);
                ws.remove[a][b] = pre.ones().collect();
                if !ws.remove[a][b].is_empty() {
                    ws.nonempty[b] += 1;
                }
            }
        }
        for b in 0..m {
            for &q in &init.blocks()[b] {
                for a in 0..k {
                    for &r in lts.pre(a, q) {
                        for c in 0..m {
                            if ws.rel[c].contains(b) {
                                ws.count[(a * n + r) * n + c] += 1;
                            }
                        }
                    }
                }
            }
        }
        for b in (0..m).rev() {
            if ws.nonempty[b] > 0 {
                ws.push_front(b);
            }
        }
        Ok(ws)
    }

    fn unlink(&mut self, b: usize) {
        if !self.listed[b] {
            return;
        }
        let (p, nx) = (self.prev[b], self.next[b]);
        if p == NIL {
            self.head = nx;
        } else {
            self.next[p] = nx;
        }
        if nx != NIL {
            self.prev[nx] = p;
        }
        self.listed[b] = false;
    }

    fn push_front(&mut self, b: usize) {
        self.unlink(b);
        self.prev[b] = NIL;
        self.next[b] = self.head;
        if self.head != NIL {
            self.prev[self.head] = b;
        }
        self.head = b;
        self.listed[b] = true;
    }

    fn num_blocks(&self) -> usize {
        self.members.iter().take_while(|m| !m.is_empty()).count()
    }

    fn snapshot(&self) -> PartitionRelationPair {
        let m = self.num_blocks();
        let blocks = self.members[..m].to_vec();
        let rel = (0..m)
            .map(|b| {
                let mut row = FixedBitSet::with_capacity(m);
                for c in self.rel[b].ones() {
                    row.insert(c);
                }
                row
            })
            .collect();
        PartitionRelationPair::canonical(self.n, blocks, rel)
    }

    fn run(mut self) -> Result<(PartitionRelationPair, SimTrace), EngineError> {
        while self.head != NIL {
            if cfg!(debug_assertions) && self.n <= 64 {
                self.check_invariants();
            }
            let b = self.head;
            let Some(a) = (0..self.k).find(|&a| !self.remove[a][b].is_empty()) else {
                self.unlink(b);
                continue;
            };
            let remove = std::mem::take(&mut self.remove[a][b]);
            self.nonempty[b] -= 1;
            if self.nonempty[b] == 0 {
                self.unlink(b);
            }
            let b_prev = self.members[b].clone();
            if let Some(trace) = self.trace.as_mut() {
                let mut block = b_prev.clone();
                block.sort_unstable();
                let mut rm = remove.clone();
                rm.sort_unstable();
                trace.consumed.push(ConsumedRemove { symbol: a, block, remove: rm });
            }
            if let Some(mut trace) = self.trace.take() {
                trace.snapshots.push(self.snapshot());
                self.trace = Some(trace);
            }
            self.split(&remove);

            let mut remove_list = Vec::new();
            let mut seen = FixedBitSet::with_capacity(self.n);
            for &q in &remove {
                let d = self.block_of[q];
                if !seen.put(d) {
                    remove_list.push(d);
                }
            }
            let mut pre_blocks = Vec::new();
            seen.clear();
            for &q in &b_prev {
                for &r in self.lts.pre(a, q) {
                    let c = self.block_of[r];
                    if !seen.put(c) {
                        pre_blocks.push(c);
                    }
                }
            }
            for &c in &pre_blocks {
                for &d in &remove_list {
                    if !self.rel[c].contains(d) {
                        continue;
                    }
                    debug_assert_ne!(c, d);
                    self.rel[c].set(d, false);
                    for sym in 0..self.k {
                        for i in 0..self.members[d].len() {
                            let q = self.members[d][i];
                            for &r in self.lts.pre(sym, q) {
                                let cell = &mut self.count[(sym * self.n + r) * self.n + c];
                                *cell -= 1;
                                if *cell == 0 {
                                    if self.remove[sym][c].is_empty() {
                                        self.nonempty[c] += 1;
                                    }
                                    self.remove[sym][c].push(r);
                                    self.push_front(c);
                                }
                            }
                        }
                    }
                }
            }
        }
        let result = self.snapshot();
        Ok((result, self.trace.unwrap_or_default()))
    }

    fn check_invariants(&self) {
        for b in 0..self.num_blocks() {
            let mut upper = FixedBitSet::with_capacity(self.n);
            for c in self.rel[b].ones() {
                upper.extend(self.members[c].iter().copied());
            }
            for a in 0..self.k {
                for r in 0..self.n {
                    let succ = self.lts.succ(r, a);
                    let expected = succ.iter().filter(|&&q| upper.contains(q)).count();
                    assert_eq!(self.count[(a * self.n + r) * self.n + b] as usize, expected, "Count_{a}({r}, B{b})");
                }
                for &r in &self.remove[a][b] {
                    assert!(self.lts.succ(r, a).iter().all(|&q| !upper.contains(q)), "Remove_{a}(B{b}) holds {r}");
                }
            }
        }
    }

    /// Splits every block `C` with `∅ ≠ C ∩ remove ≠ C`; the part inside
    /// `remove` becomes a fresh block inheriting `C`'s relation row and
    /// column, `Remove` sets and counters.
    fn split(&mut self, remove: &[StateId]) {
        let mut hits: HashMap<usize, usize> = HashMap::new();
        for &q in remove {
            *hits.entry(self.block_of[q]).or_default() += 1;
        }
        hits.retain(|&c, k| *k < self.members[c].len());
        let mut fresh: HashMap<usize, usize> = HashMap::new();
        let mut next_id = self.num_blocks();
        for &q in remove {
            let c = self.block_of[q];
            if !hits.contains_key(&c) {
                continue;
            }
            let d = *fresh.entry(c).or_insert_with(|| {
                let id = next_id;
                next_id += 1;
                id
            });
            let i = self.pos[q];
            let last = self.members[c].pop().expect("nonempty block");
            if last != q {
                self.members[c][i] = last;
                self.pos[last] = i;
            }
            self.pos[q] = self.members[d].len();
            self.members[d].push(q);
            self.block_of[q] = d;
        }
        let mut pairs: Vec<(usize, usize)> = fresh.into_iter().collect();
        pairs.sort_unstable();
        for (c, d) in pairs {
            let row = self.rel[c].clone();
            self.rel[d] = row;
            self.rel[d].insert(d);
            for e in 0..next_id {
                if self.rel[e].contains(c) {
                    self.rel[e].insert(d);
                }
            }
            for a in 0..self.k {
                self.remove[a][d] = self.remove[a][c].clone();
                for r in 0..self.n {
                    let base = (a * self.n + r) * self.n;
                    self.count[base + d] = self.count[base + c];
                }
            }
            self.nonempty[d] = self.nonempty[c];
            if self.nonempty[d] > 0 {
                self.push_front(d);
            }
        }
    }
}

/// The coarsest refinement of `init_partition` that is a bisimulation on `lts`.
pub fn compute_bisimulation(lts: &Lts, init_partition: &[Vec<StateId>]) -> Result<Vec<Vec<StateId>>, EngineError> {
    let n = lts.num_states();
    let pr = PartitionRelationPair::new(n, init_partition.to_vec(), &[])?;
    let mut block_of: Vec<usize> = (0..n).map(|q| pr.block_of(q)).collect();
    let mut num_blocks = pr.blocks().len();
    loop {
        let mut ids: HashMap<(usize, Vec<(usize, usize)>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let mut sig: Vec<(usize, usize)> = (0..lts.num_symbols())
                .flat_map(|a| lts.succ(q, a).iter().map(move |&r| (a, r)))
                .map(|(a, r)| (a, block_of[r]))
                .collect();
            sig.sort_unstable();
            sig.dedup();
            let fresh = ids.len();
            next[q] = *ids.entry((block_of[q], sig)).or_insert(fresh);
        }
        let stable = ids.len() == num_blocks;
        block_of = next;
        num_blocks = ids.len();
        if stable {
            break;
        }
    }
    let mut blocks = vec![Vec::new(); num_blocks];
    for q in 0..n {
        blocks[block_of[q]].push(q);
    }
    blocks.sort_by_key(|b| b[0]);
    Ok(blocks)
}
