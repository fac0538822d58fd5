use std::collections::VecDeque;

use crate::plane_graph::{Dart, FaceMap, PlaneGraph, Vertex};

use super::step::ReductionStep;
use super::{ConstructiveError, Target};

/// Per-vertex facts shared by the scan phases.
struct View<'a> {
    g: &'a PlaneGraph,
    fm: FaceMap,
    in_c: Vec<bool>,
    in_k: Vec<bool>,
    /// (a, b) for vertices outside C
    class: Vec<(usize, usize)>,
}

impl<'a> View<'a> {
    fn new(t: &'a Target) -> Self {
        let g = &t.g;
        let cap = g.vertex_capacity();
        let mut in_c = vec![false; cap];
        let mut in_k = vec![false; cap];
        for v in &t.c {
            in_c[v.0] = true;
        }
        for v in &t.k {
            in_k[v.0] = true;
        }
        let mut class = vec![(0, 0); cap];
        for v in g.vertices() {
            for d in g.rotation(v) {
                if in_c[g.target(d).0] {
                    class[v.0].1 += 1;
                } else {
                    class[v.0].0 += 1;
                }
            }
        }
        View {
            g,
            fm: g.face_map(),
            in_c,
            in_k,
            class,
        }
    }

    fn internal(&self, v: Vertex) -> bool {
        !self.in_c[v.0] && !self.in_k[v.0]
    }

    fn is(&self, v: Vertex, a: usize, max_b: usize) -> bool {
        self.internal(v) && self.class[v.0].0 == a && self.class[v.0].1 <= max_b
    }

    fn is_bridge(&self, d: Dart) -> bool {
        self.fm.face_of(d) == self.fm.face_of(self.g.twin(d))
    }

    fn on_outer(&self, d: Dart) -> bool {
        self.fm.is_outer(d) || self.fm.is_outer(self.g.twin(d))
    }

    /// Whether the closed walk of darts bounds a face on either side.
    fn facial(&self, cycle: &[Dart]) -> bool {
        let g = self.g;
        let m = cycle.len();
        let forward = (0..m).all(|i| g.phi(cycle[i]) == cycle[(i + 1) % m]);
        let backward = (0..m).all(|i| g.phi(g.twin(cycle[(i + 1) % m])) == g.twin(cycle[i]));
        forward || backward
    }

    fn distinct_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.g.distinct_neighbors(v)
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.g.rotation(u).any(|d| self.g.target(d) == v)
    }
}

/// The first applicable reduction under a fixed priority order.
pub fn find_reduction(t: &Target) -> Result<ReductionStep, ConstructiveError> {
    let view = View::new(t);
    let phases: [fn(&View) -> Option<ReductionStep>; 11] = [
        edges_in_c,
        digon_faces,
        long_faces,
        small_c_vertices,
        parallel_at_c,
        light_vertices,
        separating_cycles,
        paths,
        cycles,
        paths_61,
        base_case,
    ];
    for phase in phases {
        if let Some(step) = phase(&view) {
            return Ok(step);
        }
    }
    Err(ConstructiveError::IrreducibleTarget {
        target: Box::new(t.clone()),
    })
}

fn edges_in_c(v: &View) -> Option<ReductionStep> {
    let g = v.g;
    let inside: Vec<Dart> = g
        .edges()
        .filter(|&d| v.in_c[g.origin(d).0] && v.in_c[g.target(d).0])
        .collect();
    if let Some(&d) = inside.iter().find(|&&d| !v.is_bridge(d)) {
        return Some(ReductionStep::DeleteEdgeInC { dart: d });
    }
    for &d in &inside {
        let (a, b) = (g.origin(d), g.target(d));
        for x in [a.min(b), a.max(b)] {
            if g.degree(x) == 1 {
                return Some(ReductionStep::DeleteIsolatedCVertex {
                    vertex: x,
                    edge: Some(d),
                });
            }
        }
    }
    if let Some(&d) = inside.first() {
        return Some(ReductionStep::JoinComponents { bridge: d });
    }
    g.vertices()
        .find(|&x| v.in_c[x.0] && g.degree(x) == 0)
        .map(|x| ReductionStep::DeleteIsolatedCVertex {
            vertex: x,
            edge: None,
        })
}

fn digon_faces(v: &View) -> Option<ReductionStep> {
    for (fi, w) in v.fm.walks.iter().enumerate() {
        if w.len() != 2 || Some(fi) == v.fm.outer {
            continue;
        }
        if let Some(&d) = w.darts.iter().find(|&&d| !v.on_outer(d)) {
            return Some(ReductionStep::DeleteDigonEdge { dart: d });
        }
    }
    None
}

fn long_faces(v: &View) -> Option<ReductionStep> {
    let g = v.g;
    for (fi, w) in v.fm.walks.iter().enumerate() {
        if w.len() < 4 || Some(fi) == v.fm.outer {
            continue;
        }
        let m = w.len();
        let d = &w.darts;
        let at = |i: usize| g.origin(d[i % m]);
        if let Some(j) = (0..m).find(|&j| v.in_c[at(j).0]) {
            let (prev, next) = ((j + m - 1) % m, (j + 1) % m);
            if at(prev) != at(next) {
                return Some(ReductionStep::AddChord {
                    from: d[prev],
                    to: d[next],
                });
            }
            let mid = at(j);
            if d[j] == g.twin(d[prev]) {
                return Some(ReductionStep::DeleteSmallCVertex { vertex: mid });
            }
            return Some(ReductionStep::SuppressParallelAtC { dart: d[j] });
        }
        for i in 0..m {
            let (prev, next) = ((i + m - 1) % m, (i + 1) % m);
            if at(prev) != at(next) {
                return Some(ReductionStep::AddChord {
                    from: d[prev],
                    to: d[next],
                });
            }
        }
    }
    None
}

fn small_c_vertices(v: &View) -> Option<ReductionStep> {
    v.g.vertices()
        .find(|&x| v.in_c[x.0] && v.g.degree(x) <= 3)
        .map(|x| ReductionStep::DeleteSmallCVertex { vertex: x })
}

fn parallel_at_c(v: &View) -> Option<ReductionStep> {
    let g = v.g;
    for x in g.vertices().filter(|x| v.in_c[x.0]) {
        let mut darts: Vec<(Vertex, Dart)> = g.rotation(x).map(|d| (g.target(d), d)).collect();
        darts.sort();
        if let Some(pair) = darts.windows(2).find(|p| p[0].0 == p[1].0) {
            return Some(ReductionStep::SuppressParallelAtC { dart: pair[1].1 });
        }
    }
    None
}

fn light_vertices(v: &View) -> Option<ReductionStep> {
    v.g.vertices()
        .find(|&x| {
            let (a, b) = v.class[x.0];
            v.internal(x) && (a <= 3 || (a == 4 && b <= 3))
        })
        .map(|x| ReductionStep::MoveVertexToC { vertex: x })
}

fn separating_cycles(v: &View) -> Option<ReductionStep> {
    let g = v.g;
    let free = |x: Vertex| !v.in_c[x.0];
    // 2-cycles from parallel edges
    for u in g.vertices().filter(|&u| free(u)) {
        let darts: Vec<Dart> = g.rotation(u).collect();
        for (i, &d1) in darts.iter().enumerate() {
            let w = g.target(d1);
            if w < u || !free(w) {
                continue;
            }
            for &d2 in &darts[i + 1..] {
                if g.target(d2) != w {
                    continue;
                }
                let cycle = [d1, g.twin(d2)];
                if !v.facial(&cycle) {
                    return Some(ReductionStep::SplitOnCycle {
                        cycle: cycle.to_vec(),
                        vertices: vec![u, w],
                    });
                }
            }
        }
    }
    // triangles u < x < y
    for u in g.vertices().filter(|&u| free(u)) {
        for d1 in g.rotation(u) {
            let x = g.target(d1);
            if x <= u || !free(x) {
                continue;
            }
            for d2 in g.rotation(x) {
                let y = g.target(d2);
                if y <= x || !free(y) {
                    continue;
                }
                for d3 in g.rotation(y) {
                    if g.target(d3) != u {
                        continue;
                    }
                    let cycle = [d1, d2, d3];
                    if !v.facial(&cycle) {
                        return Some(ReductionStep::SplitOnCycle {
                            cycle: cycle.to_vec(),
                            vertices: vec![u, x, y],
                        });
                    }
                }
            }
        }
    }
    None
}

/// Shortest path from `start` to a vertex accepted by `goal`, stepping only
/// through vertices accepted by `through`. The start itself is never a goal.
fn bfs_path(
    v: &View,
    start: Vertex,
    through: impl Fn(Vertex) -> bool,
    goal: impl Fn(Vertex) -> bool,
) -> Option<Vec<Vertex>> {
    let g = v.g;
    let mut prev = vec![usize::MAX; g.vertex_capacity()];
    prev[start.0] = start.0;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in v.distinct_neighbors(x) {
            if prev[y.0] != usize::MAX {
                continue;
            }
            if goal(y) {
                prev[y.0] = x.0;
                let mut path = vec![y];
                let mut z = y;
                while z != start {
                    z = Vertex(prev[z.0]);
                    path.push(z);
                }
                path.reverse();
                return Some(path);
            }
            if through(y) {
                prev[y.0] = x.0;
                queue.push_back(y);
            }
        }
    }
    None
}

fn induced(v: &View, path: &[Vertex]) -> bool {
    for i in 0..path.len() {
        for j in i + 2..path.len() {
            if v.adjacent(path[i], path[j]) {
                return false;
            }
        }
    }
    true
}

fn induced_cycle(v: &View, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    for i in 0..k {
        for j in i + 2..k {
            if (i == 0 && j == k - 1) || !v.adjacent(cycle[i], cycle[j]) {
                continue;
            }
            return false;
        }
    }
    true
}

fn paths(v: &View) -> Option<ReductionStep> {
    for s in v.g.vertices().filter(|&s| v.is(s, 5, 1)) {
        let path = bfs_path(v, s, |x| v.is(x, 6, 0), |x| v.is(x, 5, 2));
        if let Some(p) = path {
            if induced(v, &p) {
                return Some(ReductionStep::MovePathToC { path: p });
            }
        }
    }
    None
}

fn cycles(v: &View) -> Option<ReductionStep> {
    let g = v.g;
    for s in g.vertices().filter(|&s| v.is(s, 5, 2)) {
        let nbrs = v.distinct_neighbors(s);
        let six: Vec<Vertex> = nbrs.iter().copied().filter(|&x| v.is(x, 6, 0)).collect();
        for (i, &x) in six.iter().enumerate() {
            for &y in &six[i + 1..] {
                if v.adjacent(x, y) {
                    continue;
                }
                let through = |z: Vertex| v.is(z, 6, 0) && !nbrs.contains(&z);
                if let Some(mut p) = bfs_path(v, x, through, |z| z == y) {
                    p.push(s);
                    if p.len() >= 4 && induced_cycle(v, &p) {
                        return Some(ReductionStep::MoveCycleToC { cycle: p });
                    }
                }
            }
        }
    }
    None
}

fn paths_61(v: &View) -> Option<ReductionStep> {
    let g = v.g;
    for m in g.vertices().filter(|&m| v.is(m, 6, 1)) {
        for t in v
            .distinct_neighbors(m)
            .into_iter()
            .filter(|&t| v.is(t, 5, 0))
        {
            let path = bfs_path(
                v,
                m,
                |x| x != t && v.is(x, 6, 0),
                |x| x != t && v.is(x, 5, 1),
            );
            if let Some(mut p) = path {
                // p runs from m to v1
                p.reverse();
                p.push(t);
                if induced(v, &p) {
                    return Some(ReductionStep::Move61PathToC { path: p });
                }
            }
        }
    }
    None
}

fn base_case(v: &View) -> Option<ReductionStep> {
    let g = v.g;
    if g.vertices().all(|x| v.in_c[x.0] || v.in_k[x.0]) {
        let order = g.vertices().filter(|x| v.in_k[x.0]).collect();
        Some(ReductionStep::BaseCase { order })
    } else {
        None
    }
}
