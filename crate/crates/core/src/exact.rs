//! Exact two-coloring numbers for small graphs.
//!
//! Orderings are built backwards: the set `T` of vertices already placed at
//! the top fully determines the back-set of the next vertex placed below it,
//! because a common neighbor counts exactly when it lies in `T` or in `C`.
//! Feasibility is therefore a property of `T` alone, which gives a subset DP
//! and a memoized branch-and-bound.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::ordering::VertexOrdering;
use crate::plane_graph::Vertex;

pub const DEFAULT_N_LIMIT: usize = 22;

/// Hard ceiling for the subset DP (the reachability table has 2^n bits).
pub const MAX_DP_N: usize = 32;

/// Hard ceiling for the branch-and-bound masks.
pub const MAX_SEARCH_N: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{n} vertices to order exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

type Mask = u128;

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Domain vertices re-indexed densely with neighborhood masks.
struct Instance {
    verts: Vec<Vertex>,
    nbr: Vec<Mask>,
    /// domain vertices sharing a neighbor in C
    via_c: Vec<Mask>,
    non_k: Mask,
    full: Mask,
}

impl Instance {
    fn new(g: &SimpleGraph, c: &BTreeSet<Vertex>, k: &BTreeSet<Vertex>) -> Self {
        let verts: Vec<Vertex> = g.vertices().filter(|v| !c.contains(v)).collect();
        let mut index = vec![usize::MAX; g.capacity()];
        for (i, v) in verts.iter().enumerate() {
            index[v.0] = i;
        }
        let m = verts.len();
        let mut nbr = vec![0; m];
        let mut via_c = vec![0; m];
        for (i, &v) in verts.iter().enumerate() {
            for &w in g.neighbors(v) {
                if index[w.0] != usize::MAX {
                    nbr[i] |= 1 << index[w.0];
                } else {
                    for &u in g.neighbors(w) {
                        if u != v && index[u.0] != usize::MAX {
                            via_c[i] |= 1 << index[u.0];
                        }
                    }
                }
            }
        }
        let mut non_k = 0;
        for (i, v) in verts.iter().enumerate() {
            if !k.contains(v) {
                non_k |= 1 << i;
            }
        }
        let full = if m == 128 { Mask::MAX } else { (1 << m) - 1 };
        Instance {
            verts,
            nbr,
            via_c,
            non_k,
            full,
        }
    }

    fn n(&self) -> usize {
        self.verts.len()
    }

    /// Back-set of `i` when placed directly below the top set `t`.
    fn back(&self, i: usize, t: Mask) -> Mask {
        let mut l = self.nbr[i] | self.via_c[i];
        for w in bits(self.nbr[i] & t) {
            l |= self.nbr[w];
        }
        l & !t & !(1 << i)
    }

    fn eligible(&self, i: usize, t: Mask) -> bool {
        self.non_k >> i & 1 == 1 || self.non_k & !t == 0
    }
}

fn check_size(m: usize, n_limit: usize) -> Result<(), ExactError> {
    let limit = n_limit.min(MAX_DP_N);
    if m > limit {
        Err(ExactError::TooLarge { n: m, limit })
    } else {
        Ok(())
    }
}

/// Subset DP: a witness ordering with every back-set of size at most `d`
/// and all of `k` first, or `None`.
pub fn feasible_d(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    k: &BTreeSet<Vertex>,
    d: usize,
) -> Result<Option<VertexOrdering>, ExactError> {
    feasible_d_with_limit(g, c, k, d, DEFAULT_N_LIMIT)
}

pub fn feasible_d_with_limit(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    k: &BTreeSet<Vertex>,
    d: usize,
    n_limit: usize,
) -> Result<Option<VertexOrdering>, ExactError> {
    let inst = Instance::new(g, c, k);
    check_size(inst.n(), n_limit)?;
    Ok(solve_dp(&inst, d))
}

fn solve_dp(inst: &Instance, d: usize) -> Option<VertexOrdering> {
    let m = inst.n();
    let states = 1usize << m;
    let mut reach = vec![0u64; states.div_ceil(64)];
    let get = |r: &[u64], t: usize| r[t >> 6] >> (t & 63) & 1 == 1;
    reach[0] = 1;
    for t in 0..states {
        if !get(&reach, t) {
            continue;
        }
        let tm = t as Mask;
        for i in bits(inst.full & !tm) {
            if inst.eligible(i, tm) && inst.back(i, tm).count_ones() as usize <= d {
                let u = t | 1 << i;
                reach[u >> 6] |= 1 << (u & 63);
            }
        }
    }
    let full = states - 1;
    if !get(&reach, full) {
        return None;
    }
    // walk down from the full set; each removed vertex is the next in order
    let mut seq = Vec::with_capacity(m);
    let mut t = full;
    while t != 0 {
        let i = bits(t as Mask)
            .find(|&i| {
                let rest = t & !(1 << i);
                get(&reach, rest)
                    && inst.eligible(i, rest as Mask)
                    && inst.back(i, rest as Mask).count_ones() as usize <= d
            })
            .expect("reachable state has a predecessor");
        seq.push(inst.verts[i]);
        t &= !(1 << i);
    }
    Some(VertexOrdering::new(seq))
}

/// Least `d + 1` over all orderings of `V \ C` that put `K` first.
pub fn col2_exact(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    k: &BTreeSet<Vertex>,
    n_limit: usize,
) -> Result<usize, ExactError> {
    col2_exact_with_witness(g, c, k, n_limit).map(|(v, _)| v)
}

pub fn col2_exact_with_witness(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    k: &BTreeSet<Vertex>,
    n_limit: usize,
) -> Result<(usize, VertexOrdering), ExactError> {
    let inst = Instance::new(g, c, k);
    check_size(inst.n(), n_limit)?;
    for d in 0.. {
        if let Some(w) = solve_dp(&inst, d) {
            return Ok((d + 1, w));
        }
    }
    unreachable!()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBoundOutcome {
    /// No ordering with back-degree at most `d` exists.
    Infeasible,
    Feasible(VertexOrdering),
    Timeout,
}

#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    pub outcome: LowerBoundOutcome,
    pub nodes: u64,
    pub dead_states: usize,
    pub elapsed: Duration,
}

struct Search<'a> {
    inst: &'a Instance,
    d: usize,
    dead: HashSet<Mask>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
    /// capacity[r] = sum over positions 1..=r of min(d, i - 1)
    capacity: Vec<usize>,
    stack: Vec<usize>,
}

impl Search<'_> {
    /// Lower bound on the total back-set size of the unplaced vertices: every
    /// edge inside them, and every non-adjacent pair of them with a common
    /// neighbor already placed or in C, lands in the back-set of its later end.
    fn forced_pairs(&self, t: Mask) -> usize {
        let r = self.inst.full & !t;
        let mut twice = 0;
        for u in bits(r) {
            let mut reach = self.inst.via_c[u];
            for w in bits(self.inst.nbr[u] & t) {
                reach |= self.inst.nbr[w];
            }
            reach |= self.inst.nbr[u];
            twice += (reach & r & !(1 << u)).count_ones() as usize;
        }
        twice / 2
    }

    fn dfs(&mut self, t: Mask) -> bool {
        if t == self.inst.full {
            return true;
        }
        if self.timed_out || self.dead.contains(&t) {
            return false;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline {
            self.timed_out = true;
            return false;
        }
        let r = self.inst.full & !t;
        if self.forced_pairs(t) > self.capacity[r.count_ones() as usize] {
            self.dead.insert(t);
            return false;
        }
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for i in bits(r) {
            if !self.inst.eligible(i, t) {
                continue;
            }
            let l = self.inst.back(i, t).count_ones() as usize;
            if l > self.d {
                continue;
            }
            // A fitting vertex with no unplaced neighbor can go next without
            // loss: it is then no one's earlier vertex and is never a common
            // neighbor of two unplaced vertices.
            if self.inst.nbr[i] & r == 0 {
                cands.clear();
                cands.push((l, i));
                break;
            }
            cands.push((l, i));
        }
        cands.sort_unstable();
        for (_, i) in cands {
            self.stack.push(i);
            if self.dfs(t | 1 << i) {
                return true;
            }
            self.stack.pop();
            if self.timed_out {
                return false;
            }
        }
        self.dead.insert(t);
        false
    }
}

/// Budgeted search for an ordering of all vertices of `g` with back-degree at
/// most `d`. `Infeasible` certifies that the two-coloring number exceeds `d + 1`.
/// Graphs with more than [`MAX_SEARCH_N`] vertices report `Timeout`.
pub fn prove_lower_bound(g: &SimpleGraph, d: usize, budget: Duration) -> LowerBoundReport {
    let start = Instant::now();
    let empty = BTreeSet::new();
    if g.vertex_count() > MAX_SEARCH_N {
        return LowerBoundReport {
            outcome: LowerBoundOutcome::Timeout,
            nodes: 0,
            dead_states: 0,
            elapsed: start.elapsed(),
        };
    }
    let inst = Instance::new(g, &empty, &empty);
    let n = inst.n();
    let mut capacity = vec![0usize; n + 1];
    for r in 1..=n {
        capacity[r] = capacity[r - 1] + d.min(r - 1);
    }
    let mut s = Search {
        inst: &inst,
        d,
        dead: HashSet::new(),
        nodes: 0,
        deadline: start + budget,
        timed_out: false,
        capacity,
        stack: Vec::new(),
    };
    let found = s.dfs(0);
    let outcome = if found {
        // the stack holds vertices from the top down
        let seq = s.stack.iter().rev().map(|&i| inst.verts[i]).collect();
        LowerBoundOutcome::Feasible(VertexOrdering::new(seq))
    } else if s.timed_out {
        LowerBoundOutcome::Timeout
    } else {
        LowerBoundOutcome::Infeasible
    };
    LowerBoundReport {
        outcome,
        nodes: s.nodes,
        dead_states: s.dead.len(),
        elapsed: start.elapsed(),
    }
}
