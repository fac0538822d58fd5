//! Greedy backward construction of orderings.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::SimpleGraph;
use crate::ordering::VertexOrdering;
use crate::plane_graph::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    SmallestId,
    /// Uniform choice among the minimizers, driven by a seeded generator.
    Seeded(u64),
}

/// Builds an ordering from the top down. At each step the eligible vertex
/// with the smallest back-set below the vertices already placed is put next;
/// vertices of `k` become eligible only once everything else is placed.
pub fn greedy_backward(
    g: &SimpleGraph,
    c: &BTreeSet<Vertex>,
    k: &BTreeSet<Vertex>,
    tie: TieBreak,
) -> VertexOrdering {
    let cap = g.capacity();
    let mut in_c = vec![false; cap];
    for v in c {
        if v.0 < cap {
            in_c[v.0] = true;
        }
    }
    let domain: Vec<Vertex> = g.vertices().filter(|v| !in_c[v.0]).collect();
    let mut placed = vec![false; cap];
    let mut remaining_non_k = domain.iter().filter(|v| !k.contains(v)).count();
    let mut rng = match tie {
        TieBreak::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        TieBreak::SmallestId => None,
    };
    let mut stamp = vec![0u32; cap];
    let mut round = 0u32;
    let mut top_down = Vec::with_capacity(domain.len());
    let mut best: Vec<Vertex> = Vec::new();
    for _ in 0..domain.len() {
        let mut best_size = usize::MAX;
        best.clear();
        for &v in &domain {
            if placed[v.0] || (remaining_non_k > 0 && k.contains(&v)) {
                continue;
            }
            round += 1;
            let mut size = 0;
            let mut count = |u: Vertex, stamp: &mut Vec<u32>| {
                if u != v && !in_c[u.0] && !placed[u.0] && stamp[u.0] != round {
                    stamp[u.0] = round;
                    size += 1;
                }
            };
            for &w in g.neighbors(v) {
                count(w, &mut stamp);
                if in_c[w.0] || placed[w.0] {
                    for &u in g.neighbors(w) {
                        count(u, &mut stamp);
                    }
                }
            }
            if size < best_size {
                best_size = size;
                best.clear();
            }
            if size == best_size {
                best.push(v);
            }
        }
        let pick = match rng.as_mut() {
            Some(r) => best[r.gen_range(0..best.len())],
            None => best[0],
        };
        placed[pick.0] = true;
        if !k.contains(&pick) {
            remaining_non_k -= 1;
        }
        top_down.push(pick);
    }
    top_down.reverse();
    VertexOrdering::new(top_down)
}
