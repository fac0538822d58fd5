//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! `ACCEPTANCE_LOWER_BOUND_BUDGET_SECS` caps the lower-bound search
//! (default four hours).

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use col2_core::batch::{map_jobs, named_corpus, random_corpus, CorpusEntry};
use col2_core::constructive::{col2_order_planar, order_with, Solution, SolveOptions, Target};
use col2_core::discharging::audit;
use col2_core::exact::{
    col2_exact, feasible_d, prove_lower_bound, LowerBoundOutcome, DEFAULT_N_LIMIT,
};
use col2_core::generators::{kleetope, named, vertex_connectivity, Family};
use col2_core::ordering::verify;
use col2_core::{PlaneGraph, SimpleGraph, Vertex};
use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn corpus() -> Vec<CorpusEntry> {
    let mut v = named_corpus();
    v.extend(random_corpus(300, 150, 0));
    v
}

fn edges_of(n: usize, mask: u32) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                out.push((u, v));
            }
            bit += 1;
        }
    }
    out
}

/// Random `C` and `K` for an abstract graph: `K` has at most 3 vertices and
/// misses `C`.
fn random_ck(
    n: usize,
    edges: &[(usize, usize)],
    rng: &mut ChaCha8Rng,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let vs: Vec<usize> = (0..n).collect();
    let mult = |x: usize| {
        edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == x {
                    Some(b)
                } else if b == x {
                    Some(a)
                } else {
                    None
                }
            })
            .collect::<Vec<_>>()
    };
    let tries = rng.gen_range(0..n);
    let c = random_c(&vs, &mult, &BTreeSet::new(), rng, tries);
    let mut rest: Vec<usize> = vs.into_iter().filter(|v| !c.contains(v)).collect();
    rest.shuffle(rng);
    let k = rest.into_iter().take(rng.gen_range(0..=3)).collect();
    (c, k)
}

fn exact_vs_brute(
    n: usize,
    edges: &[(usize, usize)],
    c: &BTreeSet<usize>,
    k: &BTreeSet<usize>,
) -> Result<(), String> {
    let g = SimpleGraph::from_edges(n, edges);
    let cs: Set = c.iter().map(|&v| Vertex(v)).collect();
    let ks: Set = k.iter().map(|&v| Vertex(v)).collect();
    let exact = col2_exact(&g, &cs, &ks, DEFAULT_N_LIMIT).map_err(|e| e.to_string())?;
    let brute = brute_force_col2(n, &adjacency(n, edges), c, k);
    if exact == brute {
        Ok(())
    } else {
        Err(format!(
            "n={n} edges={edges:?} C={c:?} K={k:?}: exact {exact}, brute force {brute}"
        ))
    }
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut small = 0;
    for n in 1..=5 {
        let pairs = n * (n - 1) / 2;
        for mask in 0u32..1 << pairs {
            let edges = edges_of(n, mask);
            if !is_connected(n, &adjacency(n, &edges)) {
                continue;
            }
            small += 1;
            exact_vs_brute(n, &edges, &BTreeSet::new(), &BTreeSet::new())?;
            let (c, k) = random_ck(n, &edges, &mut rng);
            exact_vs_brute(n, &edges, &c, &k)?;
        }
    }
    for seed in 0..200u64 {
        let n = 6 + (seed % 2) as usize;
        let edges = random_multigraph(n, seed);
        exact_vs_brute(n, &edges, &BTreeSet::new(), &BTreeSet::new())?;
        let (c, k) = random_ck(n, &edges, &mut rng);
        exact_vs_brute(n, &edges, &c, &k)?;
    }
    Ok(format!("{small} connected graphs on <= 5 vertices and 200 random multigraphs, absolute and relative"))
}

fn criterion_2(entries: &[CorpusEntry]) -> Check {
    let results = map_jobs(entries, jobs(), |e| {
        let ord = col2_order_planar(&e.graph).map_err(|err| format!("{}: {err}", e.name))?;
        let g = e.graph.underlying();
        let none = BTreeSet::new();
        let profile =
            verify(&g, &none, &none, &ord, 7).map_err(|err| format!("{}: {err}", e.name))?;
        let order: Vec<usize> = ord.as_slice().iter().map(|v| v.0).collect();
        let mb = oracle_max_back(&adjacency_of(&g), &BTreeSet::new(), &order);
        if mb != profile.max_back || mb > 7 {
            return Err(format!(
                "{}: oracle max back {mb}, reported {}",
                e.name, profile.max_back
            ));
        }
        Ok(mb)
    });
    let mut worst = 0;
    for r in results {
        worst = worst.max(r?);
    }
    Ok(format!(
        "{} graphs ordered, worst back-set {worst}",
        entries.len()
    ))
}

/// Solutions with traces for every graph of the corpus (empty `C`, `K`).
fn traced_plain(entries: &[CorpusEntry]) -> Result<Vec<Solution>, String> {
    let opts = SolveOptions {
        certify: true,
        trace: true,
    };
    map_jobs(entries, jobs(), |e| {
        order_with(&e.graph, &BTreeSet::new(), &BTreeSet::new(), opts)
            .map_err(|err| format!("{}: {err}", e.name))
    })
    .into_iter()
    .collect()
}

struct Relative {
    name: String,
    graph: PlaneGraph,
    k: Set,
    c: Set,
}

fn relative_instances(entries: &[CorpusEntry]) -> Vec<Relative> {
    entries
        .iter()
        .filter(|e| e.name.starts_with("random"))
        .take(100)
        .enumerate()
        .map(|(i, e)| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
            let mut outer: Vec<Vertex> = e.graph.outer_vertices().into_iter().collect();
            outer.shuffle(&mut rng);
            let k: Set = outer.into_iter().take(rng.gen_range(0..=3)).collect();
            let tries = rng.gen_range(1..=e.graph.vertex_count());
            let c = random_plane_c(&e.graph, &k, &mut rng, tries);
            Relative {
                name: e.name.clone(),
                graph: e.graph.clone(),
                k,
                c,
            }
        })
        .collect()
}

fn criterion_3(instances: &[Relative]) -> Result<(String, Vec<Solution>), String> {
    let opts = SolveOptions {
        certify: true,
        trace: true,
    };
    let sols: Vec<Solution> = map_jobs(instances, jobs(), |r| {
        let sol = order_with(&r.graph, &r.k, &r.c, opts).map_err(|e| format!("{}: {e}", r.name))?;
        let g = r.graph.underlying();
        verify(&g, &r.k, &r.c, &sol.ordering, 7).map_err(|e| format!("{}: {e}", r.name))?;
        let order: Vec<usize> = sol.ordering.as_slice().iter().map(|v| v.0).collect();
        let prefix: Set = sol
            .ordering
            .as_slice()
            .iter()
            .take(r.k.len())
            .copied()
            .collect();
        if prefix != r.k {
            return Err(format!("{}: K is not a prefix", r.name));
        }
        if oracle_max_back(&adjacency_of(&g), &to_usize(&r.c), &order) > 7 {
            return Err(format!("{}: oracle back-set above 7", r.name));
        }
        Ok(sol)
    })
    .into_iter()
    .collect::<Result<_, _>>()?;
    let with_c = instances.iter().filter(|r| !r.c.is_empty()).count();
    Ok((
        format!(
            "{} targets ({with_c} with nonempty C), all verified with d = 7",
            sols.len()
        ),
        sols,
    ))
}

fn criterion_4(sols: &[&Solution]) -> Check {
    let mut steps = 0;
    for s in sols {
        for e in &s.trace {
            steps += 1;
            if let Some(bad) = e.after.iter().find(|m| **m >= e.before) {
                return Err(format!("step {e} has child {bad} not below {}", e.before));
            }
        }
    }
    Ok(format!(
        "{steps} traced steps over {} runs, all strictly decreasing",
        sols.len()
    ))
}

fn criterion_5(entries: &[CorpusEntry], relative: &[Relative]) -> Check {
    let mut triangulated = 0;
    let mut other = 0;
    let mut check = |t: Target, name: &str| -> Result<(), String> {
        let r = audit(&t);
        if !r.conserved() {
            return Err(format!(
                "{name}: raw {} final {}",
                r.total_raw(),
                r.total_final()
            ));
        }
        if t.g.faces().iter().all(|f| f.len() == 3) {
            triangulated += 1;
            let want = -60 - 20 * t.k.len() as i64;
            if r.expected_total != Some(want) || r.identity_holds() != Some(true) {
                return Err(format!("{name}: total {} expected {want}", r.total_final()));
            }
        } else {
            other += 1;
        }
        Ok(())
    };
    for e in entries {
        let k = e.graph.outer_vertices();
        check(Target::new(e.graph.clone(), k, BTreeSet::new()), &e.name)?;
    }
    for (i, r) in relative.iter().enumerate() {
        let k = r.graph.outer_vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + i as u64);
        let c = random_plane_c(&r.graph, &k, &mut rng, r.graph.vertex_count());
        check(Target::new(r.graph.clone(), k, c), &r.name)?;
    }
    for seed in 0..200u64 {
        let n = 6 + (seed as usize * 7) % 50;
        let g = random_plane_graph(n, seed, 1 + (seed as usize) % 12, (seed as usize) % 3);
        let k = g.outer_vertices();
        check(
            Target::new(g, k, BTreeSet::new()),
            &format!("plane:{n}:{seed}"),
        )?;
    }
    Ok(format!(
        "{triangulated} triangulated targets hit -60 - 20|K|, {other} others conserve charge"
    ))
}

/// Name, vertex count, edges and the frozen col2 value.
type SmallCase = (String, usize, Vec<(usize, usize)>, usize);

fn criterion_6() -> Check {
    let mut cases: Vec<SmallCase> = vec![
        ("K4".into(), 4, edges_of(4, 0b111111), 4),
        ("C4".into(), 4, vec![(0, 1), (1, 2), (2, 3), (3, 0)], 3),
    ];
    for n in [3, 5, 9] {
        cases.push((
            format!("K1,{n}"),
            n + 1,
            (1..=n).map(|i| (0, i)).collect(),
            2,
        ));
    }
    for n in 2..=6 {
        cases.push((format!("P{n}"), n, (1..n).map(|i| (i - 1, i)).collect(), 2));
    }
    let none = BTreeSet::new();
    for (name, n, edges, frozen) in &cases {
        let brute = brute_force_col2(*n, &adjacency(*n, edges), &none, &none);
        let g = SimpleGraph::from_edges(*n, edges);
        let exact = col2_exact(&g, &BTreeSet::new(), &BTreeSet::new(), DEFAULT_N_LIMIT)
            .map_err(|e| e.to_string())?;
        if brute != *frozen || exact != *frozen {
            return Err(format!(
                "{name}: brute force {brute}, exact {exact}, frozen {frozen}"
            ));
        }
    }
    Ok(format!(
        "{} small graphs match brute force and frozen values",
        cases.len()
    ))
}

fn pentakis() -> PlaneGraph {
    kleetope(&named(Family::Dodecahedron).unwrap())
}

fn connected_without(g: &SimpleGraph, removed: &[Vertex]) -> bool {
    let keep: Vec<Vertex> = g.vertices().filter(|v| !removed.contains(v)).collect();
    let Some(&start) = keep.first() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !removed.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == keep.len()
}

fn criterion_7() -> Check {
    let h = pentakis();
    h.validate().map_err(|e| e.to_string())?;
    let g = h.underlying();
    let (n, e, f) = (h.vertex_count(), h.edge_count(), h.faces().len());
    if g.edge_count() != e || !h.faces().iter().all(|w| w.len() == 3) || n + f != e + 2 {
        return Err(format!("not a simple triangulation: n={n} e={e} f={f}"));
    }
    let kappa = vertex_connectivity(&g);
    let vs: Vec<Vertex> = g.vertices().collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if !connected_without(&g, &[vs[a], vs[b], vs[c], vs[d]]) {
                        return Err(format!(
                            "removing {:?} disconnects",
                            [vs[a], vs[b], vs[c], vs[d]]
                        ));
                    }
                }
            }
        }
    }
    let five: Vec<Vertex> = vs.iter().copied().filter(|&v| g.degree(v) == 5).collect();
    let min_degree = vs.iter().map(|&v| g.degree(v)).min().unwrap();
    if kappa != 5 || min_degree != 5 {
        return Err(format!("connectivity {kappa}, minimum degree {min_degree}"));
    }
    for (i, &u) in five.iter().enumerate() {
        if let Some(&w) = five[i + 1..].iter().find(|&&w| g.has_edge(u, w)) {
            return Err(format!("degree-5 vertices {u} and {w} are adjacent"));
        }
    }
    let ord = col2_order_planar(&h).map_err(|e| e.to_string())?;
    let none = BTreeSet::new();
    let profile = verify(&g, &none, &none, &ord, 7).map_err(|e| e.to_string())?;
    if profile.max_back != 7 {
        return Err(format!("constructive max back {}", profile.max_back));
    }
    Ok(format!(
        "n={n}, connectivity 5, {} pairwise non-adjacent degree-5 vertices, max back 7",
        five.len()
    ))
}

fn criterion_8() -> Check {
    for f in [
        Family::Tetrahedron,
        Family::Octahedron,
        Family::DoubleWheel(3),
        Family::DoubleWheel(4),
    ] {
        let g = kleetope(&named(f).unwrap()).underlying();
        let none = BTreeSet::new();
        for d in 0..g.vertex_count() {
            let dp = feasible_d(&g, &none, &none, d)
                .map_err(|e| e.to_string())?
                .is_some();
            let search = prove_lower_bound(&g, d, Duration::from_secs(600));
            let agree = match &search.outcome {
                LowerBoundOutcome::Infeasible => !dp,
                LowerBoundOutcome::Feasible(w) => dp && verify(&g, &none, &none, w, d).is_ok(),
                LowerBoundOutcome::Timeout => false,
            };
            if !agree {
                return Err(format!(
                    "kleetope:{f} d={d}: search {:?}, DP feasible {dp}",
                    search.outcome
                ));
            }
        }
    }
    let secs: f64 = std::env::var("ACCEPTANCE_LOWER_BOUND_BUDGET_SECS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(14400.0);
    let g = pentakis().underlying();
    let r = prove_lower_bound(&g, 6, Duration::from_secs_f64(secs));
    let stats = format!("{} nodes, {:.2}s", r.nodes, r.elapsed.as_secs_f64());
    match r.outcome {
        LowerBoundOutcome::Infeasible => Ok(format!("d = 6 infeasible, so col2 = 8 ({stats})")),
        LowerBoundOutcome::Timeout => Ok(format!(
            "TIMEOUT after {stats}; only the upper bound is checked"
        )),
        LowerBoundOutcome::Feasible(w) => {
            Err(format!("found an ordering with back-degree 6: {w:?}"))
        }
    }
}

fn criterion_9() -> Check {
    let mut names = Vec::new();
    for (name, res) in run_property_suites(1000) {
        res.map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("1000 cases each: {}", names.join(", ")))
}

fn report(id: u32, start: Instant, res: &Check) -> bool {
    let t = start.elapsed().as_secs_f64();
    match res {
        Ok(msg) => println!("criterion {id} PASS ({t:.1}s) {msg}"),
        Err(msg) => println!("criterion {id} FAIL ({t:.1}s) {msg}"),
    }
    res.is_ok()
}

fn main() -> ExitCode {
    let mut ok = true;

    let s = Instant::now();
    ok &= report(1, s, &criterion_1());

    let entries = corpus();
    let s = Instant::now();
    ok &= report(2, s, &criterion_2(&entries));

    let relative = relative_instances(&entries);
    let s = Instant::now();
    let (c3, rel_sols) = match criterion_3(&relative) {
        Ok((msg, sols)) => (Ok(msg), sols),
        Err(e) => (Err(e), Vec::new()),
    };
    ok &= report(3, s, &c3);

    let s = Instant::now();
    let c4 = traced_plain(&entries).and_then(|plain| {
        if c3.is_err() {
            return Err("criterion 3 produced no traces".into());
        }
        criterion_4(&plain.iter().chain(&rel_sols).collect::<Vec<_>>())
    });
    ok &= report(4, s, &c4);

    let s = Instant::now();
    ok &= report(5, s, &criterion_5(&entries, &relative));

    let s = Instant::now();
    ok &= report(6, s, &criterion_6());

    let s = Instant::now();
    ok &= report(7, s, &criterion_7());

    let s = Instant::now();
    ok &= report(8, s, &criterion_8());

    let s = Instant::now();
    ok &= report(9, s, &criterion_9());

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
