//! Brute-force oracles, instance builders and property checks shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use col2_core::constructive::Target;
use col2_core::discharging::{audit, Rule};
use col2_core::exact::col2_exact;
use col2_core::generators::random_triangulation;
use col2_core::heuristics::{greedy_backward, TieBreak};
use col2_core::ordering::{back_set, friends};
use col2_core::plane_graph::FaceWalk;
use col2_core::{Dart, PlaneGraph, SimpleGraph, Vertex, VertexOrdering};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Set = BTreeSet<Vertex>;

pub fn set(ids: &[usize]) -> Set {
    ids.iter().map(|&v| Vertex(v)).collect()
}

/// Adjacency lists straight from an edge list, ignoring loops and repeats.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

pub fn adjacency_of(g: &SimpleGraph) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.capacity()];
    for v in g.vertices() {
        for &w in g.neighbors(v) {
            adj[v.0].insert(w.0);
        }
    }
    adj
}

/// Back-set sizes straight from the definition: an earlier vertex `u` outside
/// `C` counts for `v` if it is a neighbor, or shares a neighbor `w` that is
/// in `C` or comes after `v`.
pub fn oracle_back_sets(
    adj: &[BTreeSet<usize>],
    c: &BTreeSet<usize>,
    order: &[usize],
) -> Vec<BTreeSet<usize>> {
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            order[..i]
                .iter()
                .copied()
                .filter(|&u| {
                    adj[v].contains(&u)
                        || adj[v].iter().any(|&w| {
                            adj[u].contains(&w)
                                && (c.contains(&w) || pos.get(&w).is_some_and(|&pw| pw > i))
                        })
                })
                .collect()
        })
        .collect()
}

pub fn oracle_max_back(adj: &[BTreeSet<usize>], c: &BTreeSet<usize>, order: &[usize]) -> usize {
    oracle_back_sets(adj, c, order)
        .iter()
        .map(BTreeSet::len)
        .max()
        .unwrap_or(0)
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Minimum over every ordering of `V \ C` that lists `K` first of
/// `max back-set + 1`.
pub fn brute_force_col2(
    n: usize,
    adj: &[BTreeSet<usize>],
    c: &BTreeSet<usize>,
    k: &BTreeSet<usize>,
) -> usize {
    let mut domain: Vec<usize> = (0..n).filter(|v| !c.contains(v)).collect();
    if domain.is_empty() {
        return 1;
    }
    let mut best = usize::MAX;
    permutations(&mut domain, 0, &mut |order| {
        let kp = order.iter().take_while(|v| k.contains(v)).count();
        if kp == k.len() {
            best = best.min(oracle_max_back(adj, c, order) + 1);
        }
    });
    best
}

pub fn is_connected(n: usize, adj: &[BTreeSet<usize>]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A seeded multigraph on `n` vertices, as an edge list that may repeat
/// pairs.
pub fn random_multigraph(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.45) {
                edges.push((u, v));
                if rng.gen_bool(0.2) {
                    edges.push((u, v));
                }
            }
        }
    }
    edges
}

/// A random `C` in which every member has at most 4 neighbors outside `C`
/// (with multiplicity, taken from `mult`), avoiding `avoid`.
pub fn random_c(
    vertices: &[usize],
    mult: &dyn Fn(usize) -> Vec<usize>,
    avoid: &BTreeSet<usize>,
    rng: &mut ChaCha8Rng,
    tries: usize,
) -> BTreeSet<usize> {
    let mut c: BTreeSet<usize> = BTreeSet::new();
    for _ in 0..tries {
        let v = *vertices.choose(rng).unwrap();
        if avoid.contains(&v) || c.contains(&v) {
            continue;
        }
        c.insert(v);
        let ok = c
            .iter()
            .all(|&x| mult(x).iter().filter(|w| !c.contains(w)).count() <= 4);
        if !ok {
            c.remove(&v);
        }
    }
    c
}

/// A valid `C` for a plane graph, avoiding `avoid`.
pub fn random_plane_c(g: &PlaneGraph, avoid: &Set, rng: &mut ChaCha8Rng, tries: usize) -> Set {
    let vs: Vec<usize> = g.vertices().map(|v| v.0).collect();
    let mult = |x: usize| {
        g.rotation(Vertex(x))
            .map(|d| g.target(d).0)
            .collect::<Vec<_>>()
    };
    let avoid: BTreeSet<usize> = avoid.iter().map(|v| v.0).collect();
    random_c(&vs, &mult, &avoid, rng, tries)
        .into_iter()
        .map(Vertex)
        .collect()
}

pub fn to_usize(s: &Set) -> BTreeSet<usize> {
    s.iter().map(|v| v.0).collect()
}

/// Faces of a plane graph as vertex triples, for triangles other than the
/// outer face.
pub fn inner_triangles(g: &PlaneGraph) -> BTreeSet<[usize; 3]> {
    let fm = g.face_map();
    fm.walks
        .iter()
        .enumerate()
        .filter(|&(i, w)| Some(i) != fm.outer && w.len() == 3)
        .map(|(_, w)| {
            let mut t = [0; 3];
            for (j, &d) in w.darts.iter().enumerate() {
                t[j] = g.origin(d).0;
            }
            t.sort();
            t
        })
        .collect()
}

/// R3 transfers enumerated by a depth-first search over fan triangles.
pub fn oracle_r3(t: &Target) -> BTreeSet<(usize, Vec<usize>)> {
    let g = &t.g;
    let class = |v: usize| {
        let b = g
            .rotation(Vertex(v))
            .filter(|&d| t.c.contains(&g.target(d)))
            .count();
        (g.degree(Vertex(v)) - b, b)
    };
    let outside = |v: usize| !t.c.contains(&Vertex(v));
    let big = |v: usize| {
        let (a, b) = class(v);
        outside(v) && (t.k.contains(&Vertex(v)) || 10 * a as i64 + 5 * b as i64 - 60 > 0)
    };
    let is = |v: usize, a: usize, max_b: usize| {
        let (x, y) = class(v);
        outside(v) && !t.k.contains(&Vertex(v)) && x == a && y <= max_b
    };
    let tri = inner_triangles(g);
    let face = |a: usize, x: usize, b: usize| {
        let mut f = [a, x, b];
        f.sort();
        tri.contains(&f)
    };
    let mut out = BTreeSet::new();
    for x in g.vertices().map(|v| v.0) {
        if !(big(x) || is(x, 6, 0)) {
            continue;
        }
        let nx: Vec<usize> = g
            .distinct_neighbors(Vertex(x))
            .iter()
            .map(|v| v.0)
            .collect();
        for &v1 in nx.iter().filter(|&&v| big(v)) {
            let mut stack = vec![vec![v1]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                for &w in &nx {
                    if path.contains(&w) || !face(last, x, w) {
                        continue;
                    }
                    let mut p = path.clone();
                    p.push(w);
                    if is(w, 6, 0) {
                        stack.push(p);
                    } else if p.len() >= 3 && is(w, 5, 1) {
                        out.insert((x, p));
                    }
                }
            }
        }
    }
    out
}

/// A random plane graph: a triangulation with some edges deleted and some
/// chords added back.
pub fn random_plane_graph(n: usize, seed: u64, deletions: usize, chords: usize) -> PlaneGraph {
    let mut g = random_triangulation(n.max(3), seed, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    for _ in 0..deletions {
        let edges: Vec<Dart> = g.edges().collect();
        if let Some(&d) = edges.choose(&mut rng) {
            g.delete_edge(d).unwrap();
        }
    }
    for _ in 0..chords {
        let faces: Vec<FaceWalk> = g.faces().into_iter().filter(|f| f.len() >= 4).collect();
        let Some(f) = faces.choose(&mut rng) else {
            break;
        };
        let i = rng.gen_range(0..f.len());
        let j = rng.gen_range(0..f.len());
        let _ = g.add_chord(f, f.darts[i], f.darts[j]);
    }
    g
}

/// Checks the face-count invariants of a plane graph.
pub fn check_faces(g: &PlaneGraph) -> Result<(), TestCaseError> {
    g.validate()
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let faces = g.faces();
    let total: usize = faces.iter().map(FaceWalk::len).sum();
    prop_assert_eq!(total, 2 * g.edge_count());
    let mut seen = BTreeSet::new();
    for f in &faces {
        for &d in &f.darts {
            prop_assert!(seen.insert(d), "dart {} on two faces", d);
        }
    }
    prop_assert_eq!(seen.len(), g.dart_count());
    // each component with an edge is a sphere with its own face walks; in the
    // plane their outer walks merge into one face
    let isolated = g.vertices().filter(|&v| g.degree(v) == 0).count() as i64;
    let comps = g.component_count() as i64;
    let nontrivial = comps - isolated;
    let plane_faces = if nontrivial == 0 {
        1
    } else {
        faces.len() as i64 - (nontrivial - 1)
    };
    let (v, e) = (g.vertex_count() as i64, g.edge_count() as i64);
    prop_assert_eq!(v - e + plane_faces, 1 + comps);
    Ok(())
}

fn random_order(domain: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut o = domain.to_vec();
    o.shuffle(rng);
    o
}

/// Graph, `C` and an ordering of the rest.
pub fn graph_instance() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, u64)> {
    (1usize..=9).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), pairs),
            any::<u64>(),
        )
            .prop_map(|(n, bits, seed)| {
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                (n, edges, seed)
            })
    })
}

pub fn prop_friends_partition_back_set(
    n: usize,
    edges: &[(usize, usize)],
    seed: u64,
) -> Result<(), TestCaseError> {
    let g = SimpleGraph::from_edges(n, edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: Set = (0..n).filter(|_| rng.gen_bool(0.25)).map(Vertex).collect();
    let domain: Vec<usize> = (0..n).filter(|v| !c.contains(&Vertex(*v))).collect();
    let order = random_order(&domain, &mut rng);
    let ord = VertexOrdering::new(order.iter().map(|&v| Vertex(v)).collect());
    let adj = adjacency(n, edges);
    let oracle = oracle_back_sets(&adj, &to_usize(&c), &order);
    for (i, &u) in order.iter().enumerate() {
        let l = back_set(&g, &c, &ord, Vertex(u));
        prop_assert_eq!(to_usize(&l), oracle[i].clone());
        let mut union = BTreeSet::new();
        for &v in g.neighbors(Vertex(u)) {
            union.extend(friends(&g, &c, &ord, Vertex(u), v).unwrap());
        }
        prop_assert_eq!(union, l);
    }
    Ok(())
}

pub fn prop_edge_deletion_monotone(
    n: usize,
    edges: &[(usize, usize)],
    seed: u64,
) -> Result<(), TestCaseError> {
    if edges.is_empty() {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.25)).collect();
    let domain: Vec<usize> = (0..n).filter(|v| !c.contains(v)).collect();
    let order = random_order(&domain, &mut rng);
    let drop = rng.gen_range(0..edges.len());
    let fewer: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, &e)| e)
        .collect();
    let before = oracle_back_sets(&adjacency(n, edges), &c, &order);
    let after = oracle_back_sets(&adjacency(n, &fewer), &c, &order);
    for (a, b) in after.iter().zip(&before) {
        prop_assert!(a.is_subset(b));
    }
    // the library agrees on the smaller graph
    let g = SimpleGraph::from_edges(n, &fewer);
    let cs: Set = c.iter().map(|&v| Vertex(v)).collect();
    let ord = VertexOrdering::new(order.iter().map(|&v| Vertex(v)).collect());
    for (i, &u) in order.iter().enumerate() {
        prop_assert_eq!(
            to_usize(&back_set(&g, &cs, &ord, Vertex(u))),
            after[i].clone()
        );
    }
    Ok(())
}

/// Adding a chord only grows back-sets, so an ordering valid after the chord
/// is valid before it. A chord in a quadrilateral adds two triangles.
pub fn prop_chord_monotone(n: usize, seed: u64, deletions: usize) -> Result<(), TestCaseError> {
    let g = random_plane_graph(n, seed, deletions, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(17));
    let faces: Vec<FaceWalk> = g.faces().into_iter().filter(|f| f.len() >= 4).collect();
    let Some(f) = faces.choose(&mut rng) else {
        return Ok(());
    };
    let m = f.len();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let (u, v) = (g.origin(f.darts[i]), g.origin(f.darts[j]));
            if u != v && !g.neighbors(u).contains(&v) {
                pairs.push((i, j));
            }
        }
    }
    let Some(&(i, j)) = pairs.choose(&mut rng) else {
        return Ok(());
    };
    let mut h = g.clone();
    h.add_chord(f, f.darts[i], f.darts[j])
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    check_faces(&h)?;
    let tri = |x: &PlaneGraph| x.faces().iter().filter(|w| w.len() == 3).count();
    if m == 4 {
        prop_assert_eq!(tri(&h), tri(&g) + 2);
    } else {
        prop_assert!(tri(&h) >= tri(&g));
    }
    let adj_g = adjacency_of(&g.underlying());
    let adj_h = adjacency_of(&h.underlying());
    let c = BTreeSet::new();
    let domain: Vec<usize> = g.vertices().map(|v| v.0).collect();
    let order = random_order(&domain, &mut rng);
    let bg = oracle_back_sets(&adj_g, &c, &order);
    let bh = oracle_back_sets(&adj_h, &c, &order);
    for (a, b) in bg.iter().zip(&bh) {
        prop_assert!(a.is_subset(b));
    }
    prop_assert!(oracle_max_back(&adj_g, &c, &order) <= oracle_max_back(&adj_h, &c, &order));
    Ok(())
}

/// Face invariants after random deletions and chords, plus splitting along
/// a separating triangle when there is one.
pub fn prop_euler_and_split(
    n: usize,
    seed: u64,
    deletions: usize,
    chords: usize,
) -> Result<(), TestCaseError> {
    let g = random_plane_graph(n, seed, deletions, chords);
    check_faces(&g)?;
    let t = random_triangulation(n.max(4), seed, n / 2).unwrap();
    check_faces(&t)?;
    if let Some(cycle) = separating_triangle(&t) {
        let (outside, inside) = t
            .split_on_cycle(&cycle)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        check_faces(&outside)?;
        check_faces(&inside)?;
        check_reglue(&t, &outside, &inside, &cycle)?;
    }
    Ok(())
}

pub fn separating_triangle(g: &PlaneGraph) -> Option<Vec<Dart>> {
    let tri = inner_triangles(g);
    let outer: BTreeSet<usize> = g.outer_vertices().iter().map(|v| v.0).collect();
    for d1 in g.darts() {
        let (u, x) = (g.origin(d1), g.target(d1));
        if x <= u {
            continue;
        }
        for d2 in g.rotation(x) {
            let y = g.target(d2);
            if y <= x {
                continue;
            }
            for d3 in g.rotation(y) {
                if g.target(d3) != u {
                    continue;
                }
                let key = [u.0, x.0, y.0];
                let is_outer = key.iter().all(|v| outer.contains(v)) && outer.len() == 3;
                if !tri.contains(&key) && !is_outer {
                    return Some(vec![d1, d2, d3]);
                }
            }
        }
    }
    None
}

/// The two sides together carry every dart of `g` exactly once, except the
/// cycle edges which both carry, and restricting each rotation of `g` to one
/// side gives that side's rotation.
pub fn check_reglue(
    g: &PlaneGraph,
    a: &PlaneGraph,
    b: &PlaneGraph,
    cycle: &[Dart],
) -> Result<(), TestCaseError> {
    let q: BTreeSet<Dart> = cycle.iter().flat_map(|&d| [d, g.twin(d)]).collect();
    let da: BTreeSet<Dart> = a.darts().collect();
    let db: BTreeSet<Dart> = b.darts().collect();
    let all: BTreeSet<Dart> = g.darts().collect();
    prop_assert_eq!(da.union(&db).copied().collect::<BTreeSet<_>>(), all);
    prop_assert_eq!(da.intersection(&db).copied().collect::<BTreeSet<_>>(), q);
    for side in [a, b] {
        for v in side.vertices() {
            let mine: Vec<Dart> = side.rotation(v).collect();
            let restricted: Vec<Dart> = g.rotation(v).filter(|d| side.has_dart(*d)).collect();
            prop_assert_eq!(mine.len(), restricted.len());
            let shift = restricted.iter().position(|&d| d == mine[0]);
            prop_assert!(shift.is_some());
            let s = shift.unwrap();
            for (i, d) in mine.iter().enumerate() {
                prop_assert_eq!(*d, restricted[(s + i) % mine.len()]);
            }
        }
    }
    let shared = cycle.len() as i64;
    prop_assert_eq!(
        a.vertex_count() as i64 + b.vertex_count() as i64 - shared,
        g.vertex_count() as i64
    );
    prop_assert_eq!(
        a.edge_count() as i64 + b.edge_count() as i64 - shared,
        g.edge_count() as i64
    );
    Ok(())
}

/// Heavy edges never touch an internal `(5, <=1)` vertex, charge is
/// conserved, and R3 matches the brute-force fan search.
pub fn prop_heavy_edges(
    n: usize,
    seed: u64,
    flips: usize,
    c_tries: usize,
) -> Result<(), TestCaseError> {
    let g = random_triangulation(n, seed, flips).unwrap();
    let k = g.outer_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ffee);
    let c = random_plane_c(&g, &k, &mut rng, c_tries);
    let t = Target::new(g, k, c);
    let r = audit(&t);
    prop_assert!(r.triangulated);
    prop_assert!(r.conserved());
    prop_assert_eq!(r.identity_holds(), Some(true));
    for h in &r.ledger.heavy {
        for v in [h.y, h.z] {
            let role = r.ledger.vertices[&v].role;
            prop_assert!(
                !(role.internal && !role.in_c && role.a == 5 && role.b <= 1),
                "heavy edge at {}",
                v
            );
        }
    }
    let ours: BTreeSet<(usize, Vec<usize>)> = r
        .ledger
        .transfers
        .iter()
        .filter(|x| x.rule == Rule::R3)
        .map(|x| (x.hub.unwrap().0, x.path.iter().map(|v| v.0).collect()))
        .collect();
    let r3 = r
        .ledger
        .transfers
        .iter()
        .filter(|x| x.rule == Rule::R3)
        .count();
    prop_assert_eq!(r3, ours.len());
    prop_assert_eq!(ours, oracle_r3(&t));
    Ok(())
}

pub fn prop_greedy_at_least_exact(
    n: usize,
    edges: &[(usize, usize)],
    seed: u64,
) -> Result<(), TestCaseError> {
    let g = SimpleGraph::from_edges(n, edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: Set = (0..n).filter(|_| rng.gen_bool(0.2)).map(Vertex).collect();
    let k: Set = (0..n)
        .filter(|v| !c.contains(&Vertex(*v)) && rng.gen_bool(0.2))
        .take(3)
        .map(Vertex)
        .collect();
    let exact = col2_exact(&g, &c, &k, 22).unwrap();
    for tie in [TieBreak::SmallestId, TieBreak::Seeded(seed)] {
        let o = greedy_backward(&g, &c, &k, tie);
        let order: Vec<usize> = o.as_slice().iter().map(|v| v.0).collect();
        let kp = order
            .iter()
            .take_while(|v| k.contains(&Vertex(**v)))
            .count();
        prop_assert_eq!(kp, k.len());
        let mb = oracle_max_back(&adjacency(n, edges), &to_usize(&c), &order);
        prop_assert!(mb + 1 >= exact);
    }
    Ok(())
}

/// Deterministic runner for `cases` instances.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn plane_instance() -> impl Strategy<Value = (usize, u64, usize, usize)> {
    (4usize..40, any::<u64>(), 0usize..30, 0usize..10)
}

pub fn triangulation_instance() -> impl Strategy<Value = (usize, u64, usize, usize)> {
    (4usize..70, any::<u64>(), 0usize..200, 0usize..40)
}

/// Runs the six property suites, `cases` instances each. Returns the first
/// failure message per suite.
pub fn run_property_suites(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let mut out = Vec::new();
    let res = runner(cases).run(&graph_instance(), |(n, e, s)| {
        prop_friends_partition_back_set(n, &e, s)
    });
    out.push(("friends/back_set equality", res.map_err(|e| e.to_string())));
    let res = runner(cases).run(&graph_instance(), |(n, e, s)| {
        prop_edge_deletion_monotone(n, &e, s)
    });
    out.push(("edge-deletion monotonicity", res.map_err(|e| e.to_string())));
    let res = runner(cases).run(&plane_instance(), |(n, s, d, _)| {
        prop_chord_monotone(n, s, d)
    });
    out.push(("chord monotonicity", res.map_err(|e| e.to_string())));
    let res = runner(cases).run(&plane_instance(), |(n, s, d, c)| {
        prop_euler_and_split(n, s, d, c)
    });
    out.push(("Euler/face invariants", res.map_err(|e| e.to_string())));
    let res = runner(cases).run(&triangulation_instance(), |(n, s, f, c)| {
        prop_heavy_edges(n, s, f, c)
    });
    out.push(("heavy-edge exclusivity", res.map_err(|e| e.to_string())));
    let res = runner(cases).run(&graph_instance(), |(n, e, s)| {
        prop_greedy_at_least_exact(n, &e, s)
    });
    out.push(("greedy >= exact", res.map_err(|e| e.to_string())));
    out
}
