//! Named plane graphs, kleetopes and seeded random triangulations.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::plane_graph::{from_faces, Dart, DartSpec, PlaneGraph, RotationSpec, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Triangle,
    Tetrahedron,
    Octahedron,
    Icosahedron,
    Dodecahedron,
    DoubleWheel(usize),
    Digon,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Triangle => write!(f, "triangle"),
            Family::Tetrahedron => write!(f, "tetrahedron"),
            Family::Octahedron => write!(f, "octahedron"),
            Family::Icosahedron => write!(f, "icosahedron"),
            Family::Dodecahedron => write!(f, "dodecahedron"),
            Family::DoubleWheel(n) => write!(f, "double_wheel:{n}"),
            Family::Digon => write!(f, "digon"),
        }
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    /// Parses names such as `icosahedron` or `double_wheel:5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let fam = match name {
            "triangle" => Family::Triangle,
            "tetrahedron" => Family::Tetrahedron,
            "octahedron" => Family::Octahedron,
            "icosahedron" => Family::Icosahedron,
            "dodecahedron" => Family::Dodecahedron,
            "digon" => Family::Digon,
            "double_wheel" => {
                let n = arg
                    .ok_or_else(|| {
                        GeneratorError::InvalidParameter(
                            "double_wheel needs a rim size, e.g. double_wheel:5".into(),
                        )
                    })?
                    .parse()
                    .map_err(|_| {
                        GeneratorError::InvalidParameter(format!("bad rim size in {s:?}"))
                    })?;
                return Ok(Family::DoubleWheel(n));
            }
            _ => return Err(GeneratorError::UnknownFamily(s.to_string())),
        };
        if arg.is_some() {
            return Err(GeneratorError::InvalidParameter(format!(
                "{name} takes no parameter"
            )));
        }
        Ok(fam)
    }
}

const ICOSAHEDRON: [[usize; 3]; 20] = [
    [0, 1, 2],
    [0, 2, 6],
    [0, 5, 7],
    [0, 6, 5],
    [0, 7, 1],
    [1, 3, 8],
    [1, 7, 3],
    [1, 8, 2],
    [2, 4, 6],
    [2, 8, 4],
    [3, 7, 11],
    [3, 9, 8],
    [3, 11, 9],
    [4, 8, 9],
    [4, 9, 10],
    [4, 10, 6],
    [5, 6, 10],
    [5, 10, 11],
    [5, 11, 7],
    [9, 11, 10],
];

fn tri(faces: &[[usize; 3]]) -> Vec<Vec<usize>> {
    faces.iter().map(|f| f.to_vec()).collect()
}

pub fn named(family: Family) -> Result<PlaneGraph, GeneratorError> {
    let built = match family {
        Family::Triangle => from_faces(3, &[vec![0, 1, 2], vec![0, 2, 1]]),
        Family::Tetrahedron => from_faces(4, &tri(&[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])),
        Family::Octahedron => from_faces(
            6,
            &tri(&[
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 1],
                [5, 2, 1],
                [5, 3, 2],
                [5, 4, 3],
                [5, 1, 4],
            ]),
        ),
        Family::Icosahedron => from_faces(12, &tri(&ICOSAHEDRON)),
        Family::Dodecahedron => {
            let ico = named(Family::Icosahedron)?;
            return Ok(dual_of_triangulation(&ico));
        }
        Family::DoubleWheel(n) => {
            if n < 3 {
                return Err(GeneratorError::InvalidParameter(format!(
                    "double_wheel rim size {n} < 3"
                )));
            }
            let (north, south) = (n, n + 1);
            let mut faces = Vec::new();
            for i in 0..n {
                faces.push(vec![north, i, (i + 1) % n]);
            }
            for i in 0..n {
                faces.push(vec![south, (i + 1) % n, i]);
            }
            from_faces(n + 2, &faces)
        }
        Family::Digon => PlaneGraph::build(&RotationSpec {
            vertices: vec![Vertex(0), Vertex(1)],
            darts: vec![
                DartSpec {
                    id: Dart(0),
                    origin: Vertex(0),
                    twin: Dart(1),
                    rnext: Dart(2),
                },
                DartSpec {
                    id: Dart(1),
                    origin: Vertex(1),
                    twin: Dart(0),
                    rnext: Dart(3),
                },
                DartSpec {
                    id: Dart(2),
                    origin: Vertex(0),
                    twin: Dart(3),
                    rnext: Dart(0),
                },
                DartSpec {
                    id: Dart(3),
                    origin: Vertex(1),
                    twin: Dart(2),
                    rnext: Dart(1),
                },
            ],
            outer: Some(Dart(0)),
        }),
    };
    Ok(built.expect("built-in family is a valid embedding"))
}

/// Face list `[v0, v1, ...]` of every face orbit, in orbit order.
fn face_vertex_lists(g: &PlaneGraph) -> (Vec<Vec<usize>>, Vec<usize>) {
    // dense relabeling of vertex ids
    let mut index = vec![usize::MAX; g.vertex_capacity()];
    for (i, v) in g.vertices().enumerate() {
        index[v.0] = i;
    }
    let fm = g.face_map();
    let mut walks: Vec<_> = fm.walks.iter().collect();
    // the face holding the smallest dart comes first
    walks.sort_by_key(|w| w.darts[0]);
    let faces = walks
        .iter()
        .map(|w| w.darts.iter().map(|&d| index[g.origin(d).0]).collect())
        .collect();
    (faces, index)
}

fn dual_of_triangulation(g: &PlaneGraph) -> PlaneGraph {
    let fm = g.face_map();
    let mut faces = Vec::new();
    for v in g.vertices() {
        // walking the rotation backwards lists the incident faces in the
        // orientation that matches the primal faces
        let mut ring: Vec<usize> = g.rotation(v).map(|d| fm.face_of(d)).collect();
        ring.reverse();
        faces.push(ring);
    }
    from_faces(fm.walks.len(), &faces).expect("dual of a simple triangulation")
}

/// Inserts a vertex into every face, joined to all of its corners. The new
/// vertices get identifiers after the old ones, in order of each face's
/// smallest dart; the outer face is the triangle holding the smallest dart.
pub fn kleetope(g: &PlaneGraph) -> PlaneGraph {
    let (faces, _) = face_vertex_lists(g);
    let n = g.vertex_count();
    let mut out = Vec::new();
    for (fi, f) in faces.iter().enumerate() {
        let apex = n + fi;
        for i in 0..f.len() {
            out.push(vec![f[i], f[(i + 1) % f.len()], apex]);
        }
    }
    from_faces(n + faces.len(), &out).expect("kleetope of a simple plane graph")
}

/// Stacked triangulation on `n` vertices followed by `flips` random edge
/// flips. The outer face is the starting triangle `0 1 2` and is never touched.
pub fn random_triangulation(
    n: usize,
    seed: u64,
    flips: usize,
) -> Result<PlaneGraph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::InvalidParameter(format!("n = {n} < 3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let fi = rng.gen_range(1..faces.len());
        let [a, b, c] = faces[fi];
        faces[fi] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    for f in &faces {
        for i in 0..3 {
            let (u, v) = (f[i], f[(i + 1) % 3]);
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut done = 0;
    let mut attempts = 0;
    while done < flips && attempts < 50 * flips + 100 && faces.len() > 2 {
        attempts += 1;
        let fi = rng.gen_range(1..faces.len());
        let r = rng.gen_range(0..3);
        let f = faces[fi];
        let (u, v, x) = (f[r], f[(r + 1) % 3], f[(r + 2) % 3]);
        let Some(gi) = (1..faces.len()).find(|&j| {
            let h = faces[j];
            (0..3).any(|i| h[i] == v && h[(i + 1) % 3] == u)
        }) else {
            continue;
        };
        let h = faces[gi];
        let i = (0..3).find(|&i| h[i] == v).unwrap();
        let y = h[(i + 2) % 3];
        if x == y || edges.contains(&(x.min(y), x.max(y))) {
            continue;
        }
        edges.remove(&(u.min(v), u.max(v)));
        edges.insert((x.min(y), x.max(y)));
        faces[fi] = [y, v, x];
        faces[gi] = [x, u, y];
        done += 1;
    }
    Ok(from_faces(n, &tri(&faces)).expect("triangulation faces are consistent"))
}

/// Vertex connectivity of a simple graph via unit-capacity max-flow on the
/// vertex-split network. Complete graphs on `n` vertices give `n - 1`.
pub fn vertex_connectivity(g: &SimpleGraph) -> usize {
    let verts: Vec<Vertex> = g.vertices().collect();
    let n = verts.len();
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    for (i, &s) in verts.iter().enumerate() {
        // some vertex outside any minimum cut lies among the first best + 1
        if i > best {
            break;
        }
        for &t in &verts {
            if t == s || g.has_edge(s, t) {
                continue;
            }
            best = best.min(local_connectivity(g, s, t, best));
        }
    }
    best
}

/// Number of internally vertex-disjoint s-t paths, capped at `cap`.
fn local_connectivity(g: &SimpleGraph, s: Vertex, t: Vertex, cap: usize) -> usize {
    let size = 2 * g.capacity();
    // node 2v is v_in, 2v+1 is v_out
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    let mut to = Vec::new();
    let mut residual = Vec::new();
    let mut add = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize, c: i64| {
        adj[a].push(to.len());
        to.push(b);
        residual.push(c);
        adj[b].push(to.len());
        to.push(a);
        residual.push(0);
    };
    let big = i64::MAX / 4;
    for v in g.vertices() {
        let c = if v == s || v == t { big } else { 1 };
        add(&mut adj, 2 * v.0, 2 * v.0 + 1, c);
        for &w in g.neighbors(v) {
            add(&mut adj, 2 * v.0 + 1, 2 * w.0, big);
        }
    }
    let (src, sink) = (2 * s.0 + 1, 2 * t.0);
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; size];
        let mut seen = vec![false; size];
        seen[src] = true;
        let mut q = VecDeque::from([src]);
        while let Some(a) = q.pop_front() {
            if a == sink {
                break;
            }
            for &e in &adj[a] {
                if residual[e] > 0 && !seen[to[e]] {
                    seen[to[e]] = true;
                    prev[to[e]] = e;
                    q.push_back(to[e]);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut x = sink;
        while x != src {
            let e = prev[x];
            residual[e] -= 1;
            residual[e ^ 1] += 1;
            x = to[e ^ 1];
        }
        flow += 1;
    }
    flow
}
