use std::collections::BTreeSet;
use std::fmt;

use crate::graph::SimpleGraph;
use crate::ordering::VertexOrdering;
use crate::plane_graph::{Corner, Dart, Vertex};

use super::{check_c_bound, ConstructiveError, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    DeleteEdgeInC,
    DeleteIsolatedCVertex,
    JoinComponents,
    DeleteDigonEdge,
    AddChord,
    DeleteSmallCVertex,
    SuppressParallelAtC,
    MoveVertexToC,
    SplitOnCycle,
    MovePathToC,
    MoveCycleToC,
    Move61PathToC,
    BaseCase,
}

impl StepKind {
    pub const ALL: [StepKind; 13] = [
        StepKind::DeleteEdgeInC,
        StepKind::DeleteIsolatedCVertex,
        StepKind::JoinComponents,
        StepKind::DeleteDigonEdge,
        StepKind::AddChord,
        StepKind::DeleteSmallCVertex,
        StepKind::SuppressParallelAtC,
        StepKind::MoveVertexToC,
        StepKind::SplitOnCycle,
        StepKind::MovePathToC,
        StepKind::MoveCycleToC,
        StepKind::Move61PathToC,
        StepKind::BaseCase,
    ];
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One reduction together with what is needed to rebuild the parent ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// Delete an edge with both ends in C that lies on a cycle.
    DeleteEdgeInC {
        dart: Dart,
    },
    /// Delete a vertex of C with at most one incident edge (removed too).
    DeleteIsolatedCVertex {
        vertex: Vertex,
        edge: Option<Dart>,
    },
    /// Delete a C-C bridge and reconnect the two sides through vertices
    /// outside C that share the face the bridge was drawn in.
    JoinComponents {
        bridge: Dart,
    },
    DeleteDigonEdge {
        dart: Dart,
    },
    /// New edge between the corners entered at `from` and `to` of one face.
    AddChord {
        from: Dart,
        to: Dart,
    },
    DeleteSmallCVertex {
        vertex: Vertex,
    },
    SuppressParallelAtC {
        dart: Dart,
    },
    MoveVertexToC {
        vertex: Vertex,
    },
    SplitOnCycle {
        cycle: Vec<Dart>,
        vertices: Vec<Vertex>,
    },
    MovePathToC {
        path: Vec<Vertex>,
    },
    /// `cycle[..k-1]` are the (6,0)-vertices in cycle order, the last entry
    /// is the (5,<=2)-vertex.
    MoveCycleToC {
        cycle: Vec<Vertex>,
    },
    /// Path `v1 .. vk` with `v(k-1)` a (6,1)-vertex and `vk` a (5,0)-vertex.
    Move61PathToC {
        path: Vec<Vertex>,
    },
    BaseCase {
        order: Vec<Vertex>,
    },
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl ReductionStep {
    pub fn kind(&self) -> StepKind {
        match self {
            ReductionStep::DeleteEdgeInC { .. } => StepKind::DeleteEdgeInC,
            ReductionStep::DeleteIsolatedCVertex { .. } => StepKind::DeleteIsolatedCVertex,
            ReductionStep::JoinComponents { .. } => StepKind::JoinComponents,
            ReductionStep::DeleteDigonEdge { .. } => StepKind::DeleteDigonEdge,
            ReductionStep::AddChord { .. } => StepKind::AddChord,
            ReductionStep::DeleteSmallCVertex { .. } => StepKind::DeleteSmallCVertex,
            ReductionStep::SuppressParallelAtC { .. } => StepKind::SuppressParallelAtC,
            ReductionStep::MoveVertexToC { .. } => StepKind::MoveVertexToC,
            ReductionStep::SplitOnCycle { .. } => StepKind::SplitOnCycle,
            ReductionStep::MovePathToC { .. } => StepKind::MovePathToC,
            ReductionStep::MoveCycleToC { .. } => StepKind::MoveCycleToC,
            ReductionStep::Move61PathToC { .. } => StepKind::Move61PathToC,
            ReductionStep::BaseCase { .. } => StepKind::BaseCase,
        }
    }

    /// Parameters as `key=value` pairs for traces.
    pub fn params(&self) -> String {
        match self {
            ReductionStep::DeleteEdgeInC { dart }
            | ReductionStep::DeleteDigonEdge { dart }
            | ReductionStep::SuppressParallelAtC { dart } => format!("dart={dart}"),
            ReductionStep::DeleteIsolatedCVertex { vertex, edge } => match edge {
                Some(e) => format!("vertex={vertex} dart={e}"),
                None => format!("vertex={vertex}"),
            },
            ReductionStep::JoinComponents { bridge } => format!("bridge={bridge}"),
            ReductionStep::AddChord { from, to } => format!("from={from} to={to}"),
            ReductionStep::DeleteSmallCVertex { vertex }
            | ReductionStep::MoveVertexToC { vertex } => {
                format!("vertex={vertex}")
            }
            ReductionStep::SplitOnCycle { cycle, vertices } => {
                format!("darts={} vertices={}", list(cycle), list(vertices))
            }
            ReductionStep::MovePathToC { path } | ReductionStep::Move61PathToC { path } => {
                format!("path={}", list(path))
            }
            ReductionStep::MoveCycleToC { cycle } => format!("cycle={}", list(cycle)),
            ReductionStep::BaseCase { order } => format!("order={}", list(order)),
        }
    }

    /// Vertices appended after the child ordering, in order.
    pub fn appended(&self) -> Vec<Vertex> {
        match self {
            ReductionStep::MoveVertexToC { vertex } => vec![*vertex],
            ReductionStep::MovePathToC { path } => path.clone(),
            ReductionStep::MoveCycleToC { cycle } => cycle.clone(),
            ReductionStep::Move61PathToC { path } => {
                let mut p = path.clone();
                let k = p.len();
                p.swap(k - 2, k - 1);
                p
            }
            _ => Vec::new(),
        }
    }

    /// Friend-count limits `(u, via, limit)` that the appended vertices must
    /// meet in the parent target.
    pub(crate) fn friend_bounds(&self, g: &SimpleGraph) -> Vec<(Vertex, Vertex, usize)> {
        let mut out = Vec::new();
        let mut per_neighbor = |u: Vertex, special: &[(Vertex, usize)]| {
            for &w in g.neighbors(u) {
                let limit = special.iter().find(|(x, _)| *x == w).map_or(1, |&(_, l)| l);
                out.push((u, w, limit));
            }
        };
        match self {
            ReductionStep::MoveVertexToC { vertex } => per_neighbor(*vertex, &[]),
            ReductionStep::MovePathToC { path } => {
                for (i, &v) in path.iter().enumerate() {
                    match path.get(i + 1) {
                        Some(&next) => per_neighbor(v, &[(next, 2)]),
                        None => per_neighbor(v, &[]),
                    }
                }
            }
            ReductionStep::MoveCycleToC { cycle } => {
                for (i, &v) in cycle.iter().enumerate() {
                    match cycle.get(i + 1) {
                        Some(&next) => per_neighbor(v, &[(next, 2)]),
                        None => per_neighbor(v, &[]),
                    }
                }
            }
            ReductionStep::Move61PathToC { path } => {
                let k = path.len();
                for (i, &v) in path.iter().enumerate() {
                    if i + 2 < k {
                        per_neighbor(v, &[(path[i + 1], 2)]);
                    } else if i + 2 == k {
                        per_neighbor(v, &[]);
                    } else {
                        per_neighbor(v, &[(path[k - 2], 3)]);
                    }
                }
            }
            _ => {}
        }
        out
    }
}

fn inapplicable(step: &ReductionStep, reason: impl Into<String>) -> ConstructiveError {
    ConstructiveError::InapplicableStep {
        step: step.kind(),
        reason: reason.into(),
    }
}

/// First dart of the face orbit of `start` whose origin is outside `c`.
fn corner_outside_c(t: &Target, start: Dart) -> Option<Dart> {
    t.g.face_walk(start)
        .darts
        .into_iter()
        .find(|&d| !t.c.contains(&t.g.origin(d)))
}

/// Applies a step, returning the child targets (none for a base case, two
/// for a split with the outer side first).
pub fn apply(t: &Target, step: &ReductionStep) -> Result<Vec<Target>, ConstructiveError> {
    let g = &t.g;
    let in_c = |v: Vertex| t.c.contains(&v);
    let need_dart = |d: Dart| {
        if g.has_dart(d) {
            Ok(())
        } else {
            Err(inapplicable(step, format!("dart {d} does not exist")))
        }
    };
    let mut child = t.clone();
    match step {
        ReductionStep::DeleteEdgeInC { dart } => {
            need_dart(*dart)?;
            if !in_c(g.origin(*dart)) || !in_c(g.target(*dart)) {
                return Err(inapplicable(step, "edge does not lie inside C"));
            }
            child.g.delete_edge(*dart)?;
        }
        ReductionStep::DeleteIsolatedCVertex { vertex, edge } => {
            if !in_c(*vertex) {
                return Err(inapplicable(step, format!("vertex {vertex} is not in C")));
            }
            match edge {
                Some(e) => {
                    need_dart(*e)?;
                    if g.degree(*vertex) != 1 || g.origin(*e) != *vertex && g.target(*e) != *vertex
                    {
                        return Err(inapplicable(step, "vertex is not a leaf on the given edge"));
                    }
                    if !in_c(g.origin(*e)) || !in_c(g.target(*e)) {
                        return Err(inapplicable(step, "edge does not lie inside C"));
                    }
                }
                None if g.degree(*vertex) != 0 => {
                    return Err(inapplicable(step, "vertex is not isolated"))
                }
                None => {}
            }
            child.g.delete_vertex(*vertex)?;
            child.c.remove(vertex);
        }
        ReductionStep::JoinComponents { bridge } => {
            need_dart(*bridge)?;
            let b = *bridge;
            let tb = g.twin(b);
            if !in_c(g.origin(b)) || !in_c(g.target(b)) {
                return Err(inapplicable(step, "bridge does not lie inside C"));
            }
            if !g.face_walk(b).darts.contains(&tb) {
                return Err(inapplicable(step, "edge is not a bridge"));
            }
            let (p_side, q_side) = (g.rnext(b), g.rnext(tb));
            if p_side == b || q_side == tb {
                return Err(inapplicable(step, "bridge has a leaf end"));
            }
            child.g.delete_edge(b)?;
            let x = corner_outside_c(&child, p_side)
                .ok_or_else(|| inapplicable(step, "no corner outside C on one side"))?;
            let y = corner_outside_c(&child, q_side)
                .ok_or_else(|| inapplicable(step, "no corner outside C on the other side"))?;
            child.g.insert_edge(Corner::Before(x), Corner::Before(y));
        }
        ReductionStep::DeleteDigonEdge { dart } | ReductionStep::SuppressParallelAtC { dart } => {
            need_dart(*dart)?;
            child.g.delete_edge(*dart)?;
        }
        ReductionStep::AddChord { from, to } => {
            need_dart(*from)?;
            need_dart(*to)?;
            if in_c(g.origin(*from)) || in_c(g.origin(*to)) {
                return Err(inapplicable(step, "chord end lies in C"));
            }
            let face = g.face_walk(*from);
            if g.outer_dart().is_some_and(|o| face.contains(o)) {
                return Err(inapplicable(step, "chord in the outer face"));
            }
            child.g.add_chord(&face, *from, *to)?;
        }
        ReductionStep::DeleteSmallCVertex { vertex } => {
            if !in_c(*vertex) || !g.has_vertex(*vertex) {
                return Err(inapplicable(step, format!("vertex {vertex} is not in C")));
            }
            child.g.delete_vertex(*vertex)?;
            child.c.remove(vertex);
        }
        ReductionStep::MoveVertexToC { vertex } => {
            let (a, _) = g.vertex_class(&t.c, *vertex)?;
            if a > 4 || t.k.contains(vertex) {
                return Err(inapplicable(step, format!("vertex {vertex} cannot join C")));
            }
            child.c.insert(*vertex);
        }
        ReductionStep::SplitOnCycle { cycle, vertices } => {
            if vertices.iter().any(|v| in_c(*v)) {
                return Err(inapplicable(step, "cycle meets C"));
            }
            let (g1, g2) = g.split_on_cycle(cycle)?;
            let side = |h: &crate::plane_graph::PlaneGraph| -> BTreeSet<Vertex> {
                t.c.iter().copied().filter(|&v| h.has_vertex(v)).collect()
            };
            let c1 = side(&g1);
            let c2 = side(&g2);
            let t1 = Target {
                g: g1,
                k: t.k.clone(),
                c: c1,
            };
            let t2 = Target {
                g: g2,
                k: vertices.iter().copied().collect(),
                c: c2,
            };
            for x in [&t1, &t2] {
                x.validate()?;
            }
            return Ok(vec![t1, t2]);
        }
        ReductionStep::MovePathToC { path }
        | ReductionStep::MoveCycleToC { cycle: path }
        | ReductionStep::Move61PathToC { path } => {
            for v in path {
                if !g.has_vertex(*v) || in_c(*v) || t.k.contains(v) {
                    return Err(inapplicable(step, format!("vertex {v} cannot join C")));
                }
            }
            child.c.extend(path.iter().copied());
        }
        ReductionStep::BaseCase { .. } => {
            if g.vertices().any(|v| !in_c(v) && !t.k.contains(&v)) {
                return Err(inapplicable(step, "a vertex outside K and C remains"));
            }
            return Ok(Vec::new());
        }
    }
    check_c_bound(&child.g, &child.c).map_err(|e| inapplicable(step, e.to_string()))?;
    child.validate()?;
    Ok(vec![child])
}

/// Extends child orderings to an ordering of the parent target.
pub fn reconstruct(step: &ReductionStep, children: &[VertexOrdering]) -> VertexOrdering {
    match step {
        ReductionStep::BaseCase { order } => VertexOrdering::new(order.clone()),
        ReductionStep::SplitOnCycle { vertices, .. } => {
            let mut seq = children[0].as_slice().to_vec();
            seq.extend(
                children[1]
                    .as_slice()
                    .iter()
                    .filter(|v| !vertices.contains(v)),
            );
            VertexOrdering::new(seq)
        }
        _ => {
            let mut seq = children[0].as_slice().to_vec();
            seq.extend(step.appended());
            VertexOrdering::new(seq)
        }
    }
}
