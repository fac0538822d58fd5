//! Back-sets, two-degeneracy checks and the friend relation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::plane_graph::Vertex;

/// A linear order of vertices; earlier entries are smaller.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    seq: Vec<Vertex>,
}

impl VertexOrdering {
    pub fn new(seq: Vec<Vertex>) -> Self {
        VertexOrdering { seq }
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Position of each vertex, `usize::MAX` for vertices not in the order.
    pub fn positions(&self, capacity: usize) -> Vec<usize> {
        let cap = capacity.max(self.seq.iter().map(|v| v.0 + 1).max().unwrap_or(0));
        let mut pos = vec![usize::MAX; cap];
        for (i, v) in self.seq.iter().enumerate() {
            pos[v.0] = i;
        }
        pos
    }
}

impl From<Vec<Vertex>> for VertexOrdering {
    fn from(seq: Vec<Vertex>) -> Self {
        VertexOrdering::new(seq)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderingError {
    #[error("ordering does not match the vertex set outside C: {0}")]
    DomainMismatch(String),
    #[error("vertex {later} of K comes after non-K vertex {earlier}")]
    KPrefixViolation { earlier: Vertex, later: Vertex },
    #[error("vertex {vertex} has {} back-set members (limit {limit}): {}", back_set.len(), ids(back_set))]
    BackDegreeExceeded {
        vertex: Vertex,
        back_set: Vec<Vertex>,
        limit: usize,
    },
    #[error("{0} and {1} are not adjacent")]
    NotNeighbors(Vertex, Vertex),
}

fn ids(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Back-sets of every vertex of an ordering, in ordering position order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackProfile {
    pub order: Vec<Vertex>,
    pub back_sets: Vec<Vec<Vertex>>,
    pub max_back: usize,
}

impl BackProfile {
    pub fn sizes(&self) -> Vec<usize> {
        self.back_sets.iter().map(Vec::len).collect()
    }

    /// Upper bound on the two-coloring number witnessed by this ordering.
    pub fn col2(&self) -> usize {
        self.max_back + 1
    }
}

pub fn col2_from_ordering(profile: &BackProfile) -> usize {
    profile.col2()
}

fn membership(cap: usize, set: &BTreeSet<Vertex>) -> Vec<bool> {
    let mut m = vec![false; cap];
    for v in set {
        if v.0 < cap {
            m[v.0] = true;
        }
    }
    m
}

/// Reusable scratch space for back-set computation.
struct Scratch {
    stamp: Vec<u32>,
    round: u32,
    out: Vec<Vertex>,
}

impl Scratch {
    fn new(cap: usize) -> Self {
        Scratch {
            stamp: vec![0; cap],
            round: 0,
            out: Vec::new(),
        }
    }

    fn begin(&mut self) {
        self.round += 1;
        self.out.clear();
    }

    fn add(&mut self, u: Vertex) {
        if self.stamp[u.0] != self.round {
            self.stamp[u.0] = self.round;
            self.out.push(u);
        }
    }
}

fn back_set_into(g: &SimpleGraph, in_c: &[bool], pos: &[usize], v: Vertex, s: &mut Scratch) {
    s.begin();
    let pv = pos[v.0];
    for &w in g.neighbors(v) {
        if !in_c[w.0] && pos[w.0] < pv {
            s.add(w);
        }
        if in_c[w.0] || (pos[w.0] != usize::MAX && pos[w.0] > pv) {
            for &u in g.neighbors(w) {
                if u != v && !in_c[u.0] && pos[u.0] < pv {
                    s.add(u);
                }
            }
        }
    }
    s.out.sort_unstable();
}

/// The relative back-set of `v`: earlier vertices that are adjacent to `v`,
/// share a later common neighbor outside `c`, or share any common neighbor in `c`.
pub fn back_set(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    ord: &VertexOrdering,
    v: Vertex,
) -> BTreeSet<Vertex> {
    let cap = g.capacity();
    let pos = ord.positions(cap);
    let in_c = membership(cap, c);
    let mut s = Scratch::new(cap);
    back_set_into(g, &in_c, &pos, v, &mut s);
    s.out.iter().copied().collect()
}

/// Back-sets of every vertex of `ord`. Does not check the domain.
pub fn back_profile(g: &SimpleGraph, c: &BTreeSet<Vertex>, ord: &VertexOrdering) -> BackProfile {
    let cap = g
        .capacity()
        .max(ord.as_slice().iter().map(|v| v.0 + 1).max().unwrap_or(0));
    let pos = ord.positions(cap);
    let in_c = membership(cap, c);
    let mut s = Scratch::new(cap);
    let mut back_sets = Vec::with_capacity(ord.len());
    for &v in ord.as_slice() {
        back_set_into(g, &in_c, &pos, v, &mut s);
        back_sets.push(s.out.clone());
    }
    let max_back = back_sets.iter().map(Vec::len).max().unwrap_or(0);
    BackProfile {
        order: ord.as_slice().to_vec(),
        back_sets,
        max_back,
    }
}

/// Checks that `ord` is a permutation of the vertices of `g` outside `c`.
pub fn check_domain(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    ord: &VertexOrdering,
) -> Result<(), OrderingError> {
    let mut seen = vec![false; g.capacity()];
    for &v in ord.as_slice() {
        if !g.contains(v) {
            return Err(OrderingError::DomainMismatch(format!(
                "vertex {v} is not in the graph"
            )));
        }
        if c.contains(&v) {
            return Err(OrderingError::DomainMismatch(format!(
                "vertex {v} belongs to C"
            )));
        }
        if seen[v.0] {
            return Err(OrderingError::DomainMismatch(format!(
                "vertex {v} appears twice"
            )));
        }
        seen[v.0] = true;
    }
    if let Some(v) = g.vertices().find(|v| !seen[v.0] && !c.contains(v)) {
        return Err(OrderingError::DomainMismatch(format!(
            "vertex {v} is missing"
        )));
    }
    Ok(())
}

/// Validity of `ord` for the target `(g, k, c)` with back-degree bound `d`.
/// On failure reports the earliest offending vertex.
pub fn verify(
    g: &SimpleGraph,
    k: &BTreeSet<Vertex>,
    c: &BTreeSet<Vertex>,
    ord: &VertexOrdering,
    d: usize,
) -> Result<BackProfile, OrderingError> {
    check_domain(g, c, ord)?;
    let seq = ord.as_slice();
    if let Some(first_non_k) = seq.iter().position(|v| !k.contains(v)) {
        if let Some(late) = seq[first_non_k..].iter().find(|v| k.contains(v)) {
            return Err(OrderingError::KPrefixViolation {
                earlier: seq[first_non_k],
                later: *late,
            });
        }
    }
    let profile = back_profile(g, c, ord);
    if let Some(i) = profile.back_sets.iter().position(|b| b.len() > d) {
        return Err(OrderingError::BackDegreeExceeded {
            vertex: profile.order[i],
            back_set: profile.back_sets[i].clone(),
            limit: d,
        });
    }
    Ok(profile)
}

/// Friends of `u` via its neighbor `v`.
pub fn friends(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    ord: &VertexOrdering,
    u: Vertex,
    v: Vertex,
) -> Result<BTreeSet<Vertex>, OrderingError> {
    if !g.has_edge(u, v) {
        return Err(OrderingError::NotNeighbors(u, v));
    }
    let pos = ord.positions(g.capacity());
    let before = |a: Vertex, b: Vertex| {
        pos[a.0] != usize::MAX && pos[b.0] != usize::MAX && pos[a.0] < pos[b.0]
    };
    let common_c = |a: Vertex, b: Vertex| {
        g.neighbors(a)
            .iter()
            .any(|x| c.contains(x) && g.has_edge(*x, b))
    };
    let mut out = BTreeSet::new();
    if !c.contains(&v) && before(v, u) {
        out.insert(v);
    }
    for &w in g.neighbors(v) {
        if w == u || c.contains(&w) || !before(w, u) || g.has_edge(u, w) {
            continue;
        }
        if c.contains(&v) || (!common_c(u, w) && before(u, v)) {
            out.insert(w);
        }
    }
    Ok(out)
}
