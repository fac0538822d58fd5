use std::collections::BTreeSet;

use crate::plane_graph::{Corner, Dart, PlaneGraph, Vertex};

use super::{check_c_bound, ConstructiveError, Target};

/// A target built from an arbitrary plane graph, with the vertices that were
/// added along the way.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub target: Target,
    pub added: BTreeSet<Vertex>,
}

/// Turns `(g, k0, c)` into a connected target whose outer face is incident
/// only with `K`, where `K` is `k0` plus fresh vertices up to size 2.
///
/// Edges inside `c` and isolated vertices of `c` are dropped, other
/// components are attached inside the outer face, and chords between the
/// vertices of `K` are routed along the outer face. Any valid ordering of the
/// result, restricted to the original vertices, is valid for the input.
pub fn normalize(
    g: &PlaneGraph,
    k0: &BTreeSet<Vertex>,
    c: &BTreeSet<Vertex>,
) -> Result<Normalized, ConstructiveError> {
    if k0.len() > 3 {
        return Err(ConstructiveError::InvalidTarget(format!(
            "|K| = {} > 3",
            k0.len()
        )));
    }
    for v in k0.iter().chain(c) {
        if !g.has_vertex(*v) {
            return Err(ConstructiveError::InvalidTarget(format!(
                "vertex {v} is not in the graph"
            )));
        }
    }
    if let Some(v) = k0.intersection(c).next() {
        return Err(ConstructiveError::BadC(format!(
            "vertex {v} is in both K and C"
        )));
    }
    check_c_bound(g, c)?;
    if g.dart_count() > 0 {
        let outer = g.outer_vertices();
        let (label, _) = g.component_labels();
        let main = label[g.origin(g.outer_dart().unwrap()).0];
        for v in k0 {
            if label[v.0] == main && !outer.contains(v) {
                return Err(ConstructiveError::KNotOnOuterFace(*v));
            }
        }
    }

    let mut h = g.clone();
    let mut c = c.clone();
    let inside_c: Vec<Dart> = h
        .edges()
        .filter(|&d| c.contains(&h.origin(d)) && c.contains(&h.target(d)))
        .collect();
    for d in inside_c {
        h.delete_edge(d)?;
    }
    let lonely: Vec<Vertex> = c.iter().copied().filter(|&v| h.degree(v) == 0).collect();
    for v in lonely {
        h.delete_vertex(v)?;
        c.remove(&v);
    }

    join_components(&mut h, k0, &c)?;

    let mut k = k0.clone();
    let mut added = BTreeSet::new();
    while k.len() < 2 {
        let x = h.add_vertex();
        let corner = match h.outer_dart() {
            Some(o) => Some(Corner::Before(
                h.face_walk(o)
                    .darts
                    .into_iter()
                    .find(|&d| !c.contains(&h.origin(d)))
                    .expect("outer walk has a vertex outside C"),
            )),
            None => h
                .vertices()
                .find(|&v| v != x && !c.contains(&v))
                .map(Corner::Isolated),
        };
        if let Some(corner) = corner {
            h.insert_edge(corner, Corner::Isolated(x));
        }
        k.insert(x);
        added.insert(x);
    }

    seal_outer_face(&mut h, &k);
    let target = Target { g: h, k, c };
    target.validate()?;
    Ok(Normalized { target, added })
}

/// Attaches every component other than the one holding the outer dart inside
/// the outer face, using vertices outside `c` at both ends.
fn join_components(
    h: &mut PlaneGraph,
    k0: &BTreeSet<Vertex>,
    c: &BTreeSet<Vertex>,
) -> Result<(), ConstructiveError> {
    loop {
        let (label, count) = h.component_labels();
        if count <= 1 {
            return Ok(());
        }
        let main = match h.outer_dart() {
            Some(o) => label[h.origin(o).0],
            None => label[h.vertices().next().unwrap().0],
        };
        let other = h.vertices().find(|v| label[v.0] != main).unwrap();
        let comp = label[other.0];
        let here = match h.outer_dart() {
            Some(o) => Corner::Before(
                h.face_walk(o)
                    .darts
                    .into_iter()
                    .find(|&d| !c.contains(&h.origin(d)))
                    .expect("outer walk has a vertex outside C"),
            ),
            None => Corner::Isolated(h.vertices().next().unwrap()),
        };
        let comp_k: Vec<Vertex> = k0.iter().copied().filter(|v| label[v.0] == comp).collect();
        let there = if h.degree(other) == 0 {
            Corner::Isolated(other)
        } else {
            // the orbit of this component that faces the outer region: the
            // first one (by smallest dart) carrying all of its K vertices
            let fm = h.face_map();
            let walk = fm
                .walks
                .iter()
                .filter(|w| label[h.origin(w.darts[0]).0] == comp)
                .find(|w| {
                    comp_k
                        .iter()
                        .all(|v| w.darts.iter().any(|&d| h.origin(d) == *v))
                })
                .ok_or(ConstructiveError::KNotOnOuterFace(comp_k[0]))?;
            Corner::Before(
                walk.darts
                    .iter()
                    .copied()
                    .find(|&d| !c.contains(&h.origin(d)))
                    .expect("component walk has a vertex outside C"),
            )
        };
        h.insert_edge(here, there);
    }
}

/// Adds chords between the vertices of `k` inside the outer face so that the
/// new outer face is bounded by `k` alone.
fn seal_outer_face(h: &mut PlaneGraph, k: &BTreeSet<Vertex>) {
    let walk = h.face_walk(h.outer_dart().expect("graph has an edge"));
    let on_walk: BTreeSet<Vertex> = walk.darts.iter().map(|&d| h.origin(d)).collect();
    if &on_walk == k {
        return;
    }
    // first occurrence of each K vertex, in walk order
    let mut picks: Vec<usize> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, &d) in walk.darts.iter().enumerate() {
        let v = h.origin(d);
        if k.contains(&v) && seen.insert(v) {
            picks.push(i);
        }
    }
    let m = walk.len();
    let w = &walk.darts;
    if picks.len() == 3 {
        let (di, dj, dk) = (w[picks[0]], w[picks[1]], w[picks[2]]);
        let x1 = h.insert_edge(Corner::Before(di), Corner::Before(dj));
        h.insert_edge(Corner::Before(dj), Corner::Before(dk));
        h.insert_edge(Corner::Before(dk), Corner::Before(x1));
        let tri = h.face_walk(x1);
        debug_assert_eq!(tri.len(), 3);
        h.set_outer_dart(Some(tri.darts[0]));
    } else {
        let (i, j) = (picks[0], picks[1]);
        let (di, dj) = (w[i], w[j]);
        let x = h.insert_edge(Corner::Before(di), Corner::Before(dj));
        let y = h.twin(x);
        if j - i == 1 {
            // face `di, y` is already a digon on K
            h.set_outer_dart(Some(h.face_walk(y).darts[0]));
        } else if m - (j - i) == 1 {
            h.set_outer_dart(Some(h.face_walk(x).darts[0]));
        } else {
            h.insert_edge(Corner::Before(x), Corner::Before(dj));
            h.set_outer_dart(Some(h.face_walk(x).darts[0]));
        }
    }
}
