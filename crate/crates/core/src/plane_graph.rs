//! Dart-based plane multigraphs.
//!
//! Every edge is a pair of twin darts. Darts leaving a vertex are linked in a
//! cyclic rotation (`rnext`), and faces are the orbits of the face successor
//! `phi(d) = rnext(twin(d))`. Parallel edges are first-class, loops are
//! rejected. Identifiers are slots in dense vectors; freed slots are reused
//! smallest-first so that every mutation sequence is reproducible.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::SimpleGraph;

/// Vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

/// Dart (half-edge) identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed embedding: {reason}")]
    MalformedEmbedding { dart: Option<Dart>, reason: String },
    #[error("dart {dart} is a loop")]
    LoopPresent { dart: Dart },
    #[error("dart {dart} does not lie on the given face")]
    NotOnFace { dart: Dart },
    #[error("chord endpoints coincide at vertex {vertex}")]
    SameVertex { vertex: Vertex },
    #[error("chord between corners {u} and {v} would duplicate a boundary edge of the face")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("missing element: {0}")]
    MissingElement(String),
    #[error("cycle bounds a face")]
    FacialCycle,
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("vertex {0} belongs to the exceptional set")]
    VertexInC(Vertex),
}

fn malformed(dart: Option<Dart>, reason: impl Into<String>) -> GraphError {
    GraphError::MalformedEmbedding {
        dart,
        reason: reason.into(),
    }
}

/// One dart of a rotation-system description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DartSpec {
    pub id: Dart,
    pub origin: Vertex,
    pub twin: Dart,
    pub rnext: Dart,
}

/// Serializable description of an embedding, the input of [`PlaneGraph::build`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RotationSpec {
    pub vertices: Vec<Vertex>,
    pub darts: Vec<DartSpec>,
    pub outer: Option<Dart>,
}

/// A face as a cyclic sequence of darts, starting from its smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn contains(&self, d: Dart) -> bool {
        self.darts.contains(&d)
    }
}

/// Face orbits of a graph together with the dart-to-face lookup.
#[derive(Debug, Clone)]
pub struct FaceMap {
    face_of: Vec<usize>,
    pub walks: Vec<FaceWalk>,
    pub outer: Option<usize>,
}

impl FaceMap {
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }

    pub fn walk_of(&self, d: Dart) -> &FaceWalk {
        &self.walks[self.face_of[d.0]]
    }

    pub fn is_outer(&self, d: Dart) -> bool {
        Some(self.face_of[d.0]) == self.outer
    }
}

/// Where a new dart is spliced into a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    /// Immediately before `d` in the rotation at `origin(d)`; in face terms,
    /// the corner of the face walk that is entered just before `d`.
    Before(Dart),
    /// A vertex without darts.
    Isolated(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DartRec {
    origin: Vertex,
    twin: Dart,
    rnext: Dart,
    rprev: Dart,
}

#[derive(Debug, Clone, Default)]
pub struct PlaneGraph {
    live: Vec<bool>,
    anchor: Vec<Option<Dart>>,
    darts: Vec<Option<DartRec>>,
    outer: Option<Dart>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.to_spec() == other.to_spec()
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds and validates a graph from a rotation-system description.
    pub fn build(spec: &RotationSpec) -> Result<Self, GraphError> {
        let mut g = PlaneGraph::new();
        for &v in &spec.vertices {
            if v.0 >= g.live.len() {
                g.live.resize(v.0 + 1, false);
                g.anchor.resize(v.0 + 1, None);
            }
            if g.live[v.0] {
                return Err(malformed(None, format!("vertex {v} listed twice")));
            }
            g.live[v.0] = true;
        }
        let max_dart = spec.darts.iter().map(|d| d.id.0 + 1).max().unwrap_or(0);
        g.darts = vec![None; max_dart];
        for ds in &spec.darts {
            if g.darts[ds.id.0].is_some() {
                return Err(malformed(
                    Some(ds.id),
                    format!("dart {} listed twice", ds.id),
                ));
            }
            if !g.has_vertex(ds.origin) {
                return Err(malformed(
                    Some(ds.id),
                    format!("origin {} is not a vertex", ds.origin),
                ));
            }
            g.darts[ds.id.0] = Some(DartRec {
                origin: ds.origin,
                twin: ds.twin,
                rnext: ds.rnext,
                rprev: ds.id,
            });
        }
        for ds in &spec.darts {
            for (what, other) in [("twin", ds.twin), ("rnext", ds.rnext)] {
                if !g.has_dart(other) {
                    return Err(malformed(
                        Some(ds.id),
                        format!("{what} {other} is not a dart"),
                    ));
                }
            }
        }
        // rprev from rnext, rejecting non-injective rotations
        let mut seen_prev = vec![false; max_dart];
        for ds in &spec.darts {
            if seen_prev[ds.rnext.0] {
                return Err(malformed(
                    Some(ds.id),
                    format!("rnext target {} used twice", ds.rnext),
                ));
            }
            seen_prev[ds.rnext.0] = true;
            g.rec_mut(ds.rnext).rprev = ds.id;
        }
        for ds in &spec.darts {
            if g.anchor[ds.origin.0].is_none() {
                g.anchor[ds.origin.0] = Some(ds.id);
            }
        }
        g.outer = spec.outer;
        g.validate()?;
        Ok(g)
    }

    /// Checks every structural invariant of the embedding.
    pub fn validate(&self) -> Result<(), GraphError> {
        for d in self.darts() {
            let r = self.rec(d);
            if !self.has_vertex(r.origin) {
                return Err(malformed(Some(d), "origin is not a vertex"));
            }
            if !self.has_dart(r.twin) || !self.has_dart(r.rnext) || !self.has_dart(r.rprev) {
                return Err(malformed(Some(d), "dangling dart reference"));
            }
            if r.twin == d {
                return Err(malformed(Some(d), "twin is a fixed point"));
            }
            if self.twin(r.twin) != d {
                return Err(malformed(Some(d), "twin is not an involution"));
            }
            if self.origin(r.twin) == r.origin {
                return Err(GraphError::LoopPresent { dart: d });
            }
            if self.origin(r.rnext) != r.origin {
                return Err(malformed(Some(d), "rnext leaves the origin vertex"));
            }
            if self.rprev(r.rnext) != d {
                return Err(malformed(Some(d), "rnext is not a permutation"));
            }
        }
        // one rotation cycle per vertex
        let mut at_vertex = vec![0usize; self.live.len()];
        for d in self.darts() {
            at_vertex[self.origin(d).0] += 1;
        }
        for v in self.vertices() {
            match self.anchor[v.0] {
                None if at_vertex[v.0] > 0 => {
                    return Err(malformed(
                        None,
                        format!("vertex {v} has darts but no anchor"),
                    ))
                }
                None => {}
                Some(a) => {
                    if !self.has_dart(a) || self.origin(a) != v {
                        return Err(malformed(Some(a), format!("bad anchor at vertex {v}")));
                    }
                    let cycle = self.rotation(v).count();
                    if cycle != at_vertex[v.0] {
                        return Err(malformed(
                            Some(a),
                            format!("rotation at vertex {v} is not a single cycle"),
                        ));
                    }
                }
            }
        }
        match self.outer {
            Some(o) if !self.has_dart(o) => {
                return Err(malformed(Some(o), "outer dart does not exist"));
            }
            None if self.dart_count() > 0 => {
                return Err(malformed(None, "graph has edges but no outer dart"));
            }
            _ => {}
        }
        // genus zero: V - E + F = 2 on every component that has an edge
        let faces = self.face_map();
        let (comp, ncomp) = self.component_labels();
        let mut v_c = vec![0i64; ncomp];
        let mut e_c = vec![0i64; ncomp];
        let mut f_c = vec![0i64; ncomp];
        for v in self.vertices() {
            v_c[comp[v.0]] += 1;
        }
        for d in self.darts() {
            if d < self.twin(d) {
                e_c[comp[self.origin(d).0]] += 1;
            }
        }
        for w in &faces.walks {
            f_c[comp[self.origin(w.darts[0]).0]] += 1;
        }
        for i in 0..ncomp {
            if e_c[i] > 0 && v_c[i] - e_c[i] + f_c[i] != 2 {
                return Err(malformed(
                    None,
                    format!(
                        "Euler characteristic {} on a component (rotation system is not planar)",
                        v_c[i] - e_c[i] + f_c[i]
                    ),
                ));
            }
        }
        Ok(())
    }

    pub fn to_spec(&self) -> RotationSpec {
        RotationSpec {
            vertices: self.vertices().collect(),
            darts: self
                .darts()
                .map(|d| {
                    let r = self.rec(d);
                    DartSpec {
                        id: d,
                        origin: r.origin,
                        twin: r.twin,
                        rnext: r.rnext,
                    }
                })
                .collect(),
            outer: self.outer,
        }
    }

    fn rec(&self, d: Dart) -> &DartRec {
        self.darts[d.0].as_ref().expect("dead dart")
    }

    fn rec_mut(&mut self, d: Dart) -> &mut DartRec {
        self.darts[d.0].as_mut().expect("dead dart")
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.live.get(v.0).copied().unwrap_or(false)
    }

    pub fn has_dart(&self, d: Dart) -> bool {
        self.darts.get(d.0).is_some_and(Option::is_some)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.live
            .iter()
            .enumerate()
            .filter(|(_, &l)| l)
            .map(|(i, _)| Vertex(i))
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.darts
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .map(|(i, _)| Dart(i))
    }

    /// One dart per edge (the smaller of each twin pair).
    pub fn edges(&self) -> impl Iterator<Item = Dart> + '_ {
        self.darts().filter(move |&d| d < self.twin(d))
    }

    pub fn vertex_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.iter().filter(|r| r.is_some()).count()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_count() / 2
    }

    /// Upper bound (exclusive) on vertex identifiers in use.
    pub fn vertex_capacity(&self) -> usize {
        self.live.len()
    }

    pub fn dart_capacity(&self) -> usize {
        self.darts.len()
    }

    pub fn origin(&self, d: Dart) -> Vertex {
        self.rec(d).origin
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.rec(d).twin
    }

    pub fn rnext(&self, d: Dart) -> Dart {
        self.rec(d).rnext
    }

    pub fn rprev(&self, d: Dart) -> Dart {
        self.rec(d).rprev
    }

    /// Head of the dart.
    pub fn target(&self, d: Dart) -> Vertex {
        self.origin(self.twin(d))
    }

    /// Face successor.
    pub fn phi(&self, d: Dart) -> Dart {
        self.rnext(self.twin(d))
    }

    /// Inverse of the face successor.
    pub fn phi_inv(&self, d: Dart) -> Dart {
        self.twin(self.rprev(d))
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn set_outer_dart(&mut self, d: Option<Dart>) {
        self.outer = d;
    }

    /// Darts leaving `v` in rotation order.
    pub fn rotation(&self, v: Vertex) -> Rotation<'_> {
        let start = if self.has_vertex(v) {
            self.anchor[v.0]
        } else {
            None
        };
        Rotation {
            g: self,
            start,
            cur: start,
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation(v).count()
    }

    /// Neighbors in rotation order, repeated once per parallel edge.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.rotation(v).map(|d| self.target(d)).collect()
    }

    pub fn distinct_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut n = self.neighbors(v);
        n.sort_unstable();
        n.dedup();
        n
    }

    pub fn face_walk(&self, d: Dart) -> FaceWalk {
        let mut darts = vec![d];
        let mut x = self.phi(d);
        while x != d {
            darts.push(x);
            x = self.phi(x);
        }
        let min_pos = darts
            .iter()
            .enumerate()
            .min_by_key(|(_, &x)| x)
            .map(|(i, _)| i)
            .unwrap();
        darts.rotate_left(min_pos);
        FaceWalk { darts }
    }

    pub fn faces(&self) -> Vec<FaceWalk> {
        self.face_map().walks
    }

    pub fn face_map(&self) -> FaceMap {
        let mut face_of = vec![usize::MAX; self.darts.len()];
        let mut walks = Vec::new();
        for d in self.darts() {
            if face_of[d.0] != usize::MAX {
                continue;
            }
            let w = self.face_walk(d);
            for &x in &w.darts {
                face_of[x.0] = walks.len();
            }
            walks.push(w);
        }
        let outer = self.outer.map(|o| face_of[o.0]);
        FaceMap {
            face_of,
            walks,
            outer,
        }
    }

    pub fn outer_face(&self) -> Option<FaceWalk> {
        self.outer.map(|o| self.face_walk(o))
    }

    /// Vertices on the outer face walk, sorted.
    pub fn outer_vertices(&self) -> BTreeSet<Vertex> {
        self.outer_face()
            .map(|w| w.darts.iter().map(|&d| self.origin(d)).collect())
            .unwrap_or_default()
    }

    /// Component label per vertex slot (usize::MAX for dead slots) and the count.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.live.len()];
        let mut count = 0;
        for s in self.vertices() {
            if label[s.0] != usize::MAX {
                continue;
            }
            label[s.0] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for d in self.rotation(v) {
                    let w = self.target(d);
                    if label[w.0] == usize::MAX {
                        label[w.0] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    /// Number of faces of the drawing in the plane: face orbits, with the outer
    /// orbits of all but one edge-carrying component merged into their host face.
    pub fn plane_face_count(&self) -> usize {
        let orbits = self.face_map().walks.len();
        let (label, count) = self.component_labels();
        let mut with_edges = vec![false; count];
        for d in self.darts() {
            with_edges[label[self.origin(d).0]] = true;
        }
        let nontrivial = with_edges.iter().filter(|&&b| b).count();
        if nontrivial == 0 {
            1
        } else {
            orbits - nontrivial + 1
        }
    }

    /// Class `(a, b)`: edge-multiplicity counts of neighbors outside and inside `c`.
    pub fn vertex_class(
        &self,
        c: &BTreeSet<Vertex>,
        v: Vertex,
    ) -> Result<(usize, usize), GraphError> {
        if !self.has_vertex(v) {
            return Err(GraphError::MissingElement(format!("vertex {v}")));
        }
        if c.contains(&v) {
            return Err(GraphError::VertexInC(v));
        }
        let mut a = 0;
        let mut b = 0;
        for d in self.rotation(v) {
            if c.contains(&self.target(d)) {
                b += 1;
            } else {
                a += 1;
            }
        }
        Ok((a, b))
    }

    /// The underlying simple graph (parallel edges collapsed).
    pub fn underlying(&self) -> SimpleGraph {
        let mut s = SimpleGraph::with_capacity(self.live.len());
        for v in self.vertices() {
            s.add_vertex(v);
        }
        for d in self.edges() {
            s.add_edge(self.origin(d), self.target(d));
        }
        s
    }

    /// Adds an isolated vertex with the smallest unused identifier.
    pub fn add_vertex(&mut self) -> Vertex {
        let id = self
            .live
            .iter()
            .position(|&l| !l)
            .unwrap_or(self.live.len());
        if id == self.live.len() {
            self.live.push(true);
            self.anchor.push(None);
        } else {
            self.live[id] = true;
            self.anchor[id] = None;
        }
        Vertex(id)
    }

    fn alloc_dart(&mut self, placeholder: DartRec) -> Dart {
        let id = self
            .darts
            .iter()
            .position(Option::is_none)
            .unwrap_or(self.darts.len());
        if id == self.darts.len() {
            self.darts.push(Some(placeholder));
        } else {
            self.darts[id] = Some(placeholder);
        }
        Dart(id)
    }

    fn corner_vertex(&self, c: Corner) -> Vertex {
        match c {
            Corner::Before(d) => self.origin(d),
            Corner::Isolated(v) => v,
        }
    }

    fn splice(&mut self, x: Dart, c: Corner) {
        match c {
            Corner::Before(d) => {
                let p = self.rprev(d);
                self.rec_mut(p).rnext = x;
                let r = self.rec_mut(x);
                r.rprev = p;
                r.rnext = d;
                self.rec_mut(d).rprev = x;
            }
            Corner::Isolated(v) => {
                debug_assert!(self.anchor[v.0].is_none());
                let r = self.rec_mut(x);
                r.rnext = x;
                r.rprev = x;
                self.anchor[v.0] = Some(x);
            }
        }
    }

    /// Inserts an edge between two corners without any face check. Both corners
    /// must lie in the same face of the drawing (possibly on different
    /// components) for the result to stay plane. Returns the dart leaving the
    /// first corner's vertex.
    pub(crate) fn insert_edge(&mut self, cu: Corner, cv: Corner) -> Dart {
        let u = self.corner_vertex(cu);
        let v = self.corner_vertex(cv);
        assert_ne!(u, v, "insert_edge would create a loop");
        let blank = |o| DartRec {
            origin: o,
            twin: Dart(usize::MAX),
            rnext: Dart(0),
            rprev: Dart(0),
        };
        let x = self.alloc_dart(blank(u));
        let y = self.alloc_dart(blank(v));
        self.rec_mut(x).twin = y;
        self.rec_mut(y).twin = x;
        self.splice(x, cu);
        self.splice(y, cv);
        if self.outer.is_none() {
            self.outer = Some(x.min(y));
        }
        x
    }

    /// Embeds a new edge inside `face` between the corners entered at `d_u`
    /// and `d_v`. The face is split in two; returns the new dart leaving
    /// `origin(d_u)`.
    pub fn add_chord(&mut self, face: &FaceWalk, d_u: Dart, d_v: Dart) -> Result<Dart, GraphError> {
        for d in [d_u, d_v] {
            if !self.has_dart(d) || !face.contains(d) {
                return Err(GraphError::NotOnFace { dart: d });
            }
        }
        let (u, v) = (self.origin(d_u), self.origin(d_v));
        if u == v {
            return Err(GraphError::SameVertex { vertex: u });
        }
        if self.phi(d_u) == d_v || self.phi(d_v) == d_u {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        Ok(self.insert_edge(Corner::Before(d_u), Corner::Before(d_v)))
    }

    fn unlink(&mut self, x: Dart) {
        let r = *self.rec(x);
        if r.rnext == x {
            self.anchor[r.origin.0] = None;
        } else {
            self.rec_mut(r.rprev).rnext = r.rnext;
            self.rec_mut(r.rnext).rprev = r.rprev;
            if self.anchor[r.origin.0] == Some(x) {
                self.anchor[r.origin.0] = Some(r.rnext);
            }
        }
        self.darts[x.0] = None;
    }

    /// Removes the edge of `d` without touching the outer dart.
    fn remove_edge_raw(&mut self, d: Dart) {
        let t = self.twin(d);
        self.unlink(d);
        self.unlink(t);
    }

    /// Deletes the edge containing dart `d`. When the outer dart disappears the
    /// outer face is re-anchored at the smallest surviving dart of the face that
    /// absorbed it, or at the face of the smallest dart left anywhere if its
    /// component is gone.
    pub fn delete_edge(&mut self, d: Dart) -> Result<(), GraphError> {
        if !self.has_dart(d) {
            return Err(GraphError::MissingElement(format!("dart {d}")));
        }
        let t = self.twin(d);
        let old_outer = match self.outer {
            Some(o) if o == d || o == t => Some(self.face_walk(o)),
            _ => None,
        };
        self.remove_edge_raw(d);
        if let Some(walk) = old_outer {
            self.outer = walk
                .darts
                .iter()
                .copied()
                .find(|&x| self.has_dart(x))
                .or_else(|| self.darts().next())
                .map(|x| self.face_walk(x).darts[0]);
        }
        Ok(())
    }

    /// Deletes `v` with all incident edges.
    pub fn delete_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        if !self.has_vertex(v) {
            return Err(GraphError::MissingElement(format!("vertex {v}")));
        }
        while let Some(d) = self.anchor[v.0] {
            self.delete_edge(d)?;
        }
        self.live[v.0] = false;
        Ok(())
    }

    /// Splits along a separating cycle of length 2 or 3 given by its darts in
    /// walk order. Returns `(outside, inside)`: the closure of the side holding
    /// the outer face, and the closure of the other side with the cycle as its
    /// outer face. Dart and vertex identifiers are preserved.
    pub fn split_on_cycle(&self, cycle: &[Dart]) -> Result<(PlaneGraph, PlaneGraph), GraphError> {
        let m = cycle.len();
        if !(2..=3).contains(&m) {
            return Err(GraphError::NotACycle(format!("length {m}")));
        }
        for &d in cycle {
            if !self.has_dart(d) {
                return Err(GraphError::MissingElement(format!("dart {d}")));
            }
        }
        let mut seen = BTreeSet::new();
        for i in 0..m {
            if self.target(cycle[i]) != self.origin(cycle[(i + 1) % m]) {
                return Err(GraphError::NotACycle("darts are not consecutive".into()));
            }
            if !seen.insert(self.origin(cycle[i])) {
                return Err(GraphError::NotACycle("repeated vertex".into()));
            }
        }
        let edge_of = |d: Dart| d.min(self.twin(d));
        let cycle_edges: BTreeSet<Dart> = cycle.iter().map(|&d| edge_of(d)).collect();
        if cycle_edges.len() != m {
            return Err(GraphError::NotACycle("repeated edge".into()));
        }
        let fm = self.face_map();
        let outer_face = fm
            .outer
            .ok_or_else(|| GraphError::MissingElement("outer face".into()))?;
        // faces reachable from the outer face without crossing the cycle
        let mut outside = vec![false; fm.walks.len()];
        outside[outer_face] = true;
        let mut queue = VecDeque::from([outer_face]);
        while let Some(f) = queue.pop_front() {
            for &d in &fm.walks[f].darts {
                if cycle_edges.contains(&edge_of(d)) {
                    continue;
                }
                let g = fm.face_of(self.twin(d));
                if !outside[g] {
                    outside[g] = true;
                    queue.push_back(g);
                }
            }
        }
        let mut outward = None;
        for &e in &cycle_edges {
            let (a, b) = (outside[fm.face_of(e)], outside[fm.face_of(self.twin(e))]);
            if a == b {
                return Err(GraphError::NotACycle("cycle does not separate".into()));
            }
            let out_dart = if a { e } else { self.twin(e) };
            outward = Some(outward.map_or(out_dart, |o: Dart| o.min(out_dart)));
        }
        let n_out = outside.iter().filter(|&&o| o).count();
        let n_in = outside.len() - n_out;
        if n_out == 1 || n_in == 1 {
            return Err(GraphError::FacialCycle);
        }
        let cycle_vertices: BTreeSet<Vertex> = cycle.iter().map(|&d| self.origin(d)).collect();
        let side = |keep_outside: bool| {
            let mut h = self.clone();
            let doomed: Vec<Dart> = self
                .edges()
                .filter(|&e| {
                    let a = outside[fm.face_of(e)];
                    let b = outside[fm.face_of(self.twin(e))];
                    a == b && a != keep_outside
                })
                .collect();
            for e in doomed {
                h.remove_edge_raw(e);
            }
            let isolated: Vec<Vertex> = h
                .vertices()
                .filter(|v| h.anchor[v.0].is_none() && !cycle_vertices.contains(v))
                .collect();
            for v in isolated {
                h.live[v.0] = false;
            }
            h
        };
        let g1 = side(true);
        let mut g2 = side(false);
        g2.outer = outward;
        Ok((g1, g2))
    }
}

/// Iterator over the darts leaving a vertex, in rotation order.
pub struct Rotation<'a> {
    g: &'a PlaneGraph,
    start: Option<Dart>,
    cur: Option<Dart>,
}

impl Iterator for Rotation<'_> {
    type Item = Dart;

    fn next(&mut self) -> Option<Dart> {
        let d = self.cur?;
        let n = self.g.rnext(d);
        self.cur = if Some(n) == self.start { None } else { Some(n) };
        Some(d)
    }
}

/// Builds a graph from consistently oriented faces given as cyclic vertex
/// lists. Each directed edge must occur in exactly one face, so the input
/// describes a simple graph embedded on the sphere. The outer face is the
/// face listed first.
pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<PlaneGraph, GraphError> {
    use std::collections::HashMap;
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next_in_face = Vec::new();
    let mut origin = Vec::new();
    for f in faces {
        let base = origin.len();
        for i in 0..f.len() {
            let (u, v) = (f[i], f[(i + 1) % f.len()]);
            if id.insert((u, v), base + i).is_some() {
                return Err(malformed(
                    None,
                    format!("directed edge {u}->{v} appears twice"),
                ));
            }
            origin.push(u);
            next_in_face.push(base + (i + 1) % f.len());
        }
    }
    let mut darts = Vec::with_capacity(origin.len());
    let twin_of = |d: usize| -> Result<usize, GraphError> {
        let (u, v) = (origin[d], origin[next_in_face[d]]);
        id.get(&(v, u))
            .copied()
            .ok_or_else(|| malformed(Some(Dart(d)), format!("edge {u}->{v} has no twin")))
    };
    for (d, &o) in origin.iter().enumerate() {
        let t = twin_of(d)?;
        // phi(t) = next_in_face(t) = rnext(twin(t)) = rnext(d)
        darts.push(DartSpec {
            id: Dart(d),
            origin: Vertex(o),
            twin: Dart(t),
            rnext: Dart(next_in_face[t]),
        });
    }
    PlaneGraph::build(&RotationSpec {
        vertices: (0..n).map(Vertex).collect(),
        darts,
        outer: if origin.is_empty() {
            None
        } else {
            Some(Dart(0))
        },
    })
}
