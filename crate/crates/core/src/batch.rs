//! Running the constructive algorithm and the auditor over many graphs.
//!
//! With the `parallel` feature, graphs are spread over a rayon pool; each
//! graph is still processed on one thread.

use std::collections::BTreeSet;

use crate::constructive::{order_with, SolveOptions, Target};
use crate::discharging::audit;
use crate::generators::{kleetope, named, random_triangulation, Family};
use crate::plane_graph::PlaneGraph;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: PlaneGraph,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, graph: PlaneGraph) -> Self {
        CorpusEntry {
            name: name.into(),
            graph,
        }
    }
}

/// Named graphs: the icosahedron, octahedron, double wheels and kleetopes of
/// the tetrahedron, octahedron and dodecahedron.
pub fn named_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for f in [Family::Icosahedron, Family::Octahedron] {
        out.push(CorpusEntry::new(f.to_string(), named(f).unwrap()));
    }
    for n in [3, 4, 5, 6, 8, 12] {
        let f = Family::DoubleWheel(n);
        out.push(CorpusEntry::new(f.to_string(), named(f).unwrap()));
    }
    for f in [
        Family::Tetrahedron,
        Family::Octahedron,
        Family::Dodecahedron,
    ] {
        out.push(CorpusEntry::new(
            format!("kleetope:{f}"),
            kleetope(&named(f).unwrap()),
        ));
    }
    out
}

/// `count` seeded random triangulations on 4 to `max_n` vertices, with a
/// varying number of flips.
pub fn random_corpus(count: usize, max_n: usize, base_seed: u64) -> Vec<CorpusEntry> {
    let span = max_n.saturating_sub(3).max(1);
    (0..count)
        .map(|i| {
            let n = 4 + (i * 37) % span;
            let seed = base_seed + i as u64;
            let flips = n * (i % 4);
            let g = random_triangulation(n, seed, flips).unwrap();
            CorpusEntry::new(format!("random:n={n}:seed={seed}:flips={flips}"), g)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub n: usize,
    /// Largest back-set of the constructed ordering, or the error.
    pub max_back: Result<usize, String>,
    pub steps: usize,
    /// Trace entries whose children were not strictly smaller.
    pub measure_violations: usize,
    pub charge_raw: i64,
    pub charge_final: i64,
    pub charge_expected: Option<i64>,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        matches!(self.max_back, Ok(b) if b <= crate::constructive::BACK_DEGREE)
            && self.measure_violations == 0
            && self.charge_raw == self.charge_final
            && self.charge_expected.is_none_or(|e| e == self.charge_raw)
    }
}

/// Orders and audits one graph. The audit uses the outer face as `K`.
pub fn process(entry: &CorpusEntry, opts: SolveOptions) -> Outcome {
    let g = &entry.graph;
    let sol = order_with(g, &BTreeSet::new(), &BTreeSet::new(), opts);
    let (max_back, steps, measure_violations) = match sol {
        Ok(s) => {
            let bad = s
                .trace
                .iter()
                .filter(|e| e.after.iter().any(|m| *m >= e.before))
                .count();
            (Ok(s.profile.max_back), s.steps, bad)
        }
        Err(e) => (Err(e.to_string()), 0, 0),
    };
    let report = audit(&Target::new(g.clone(), g.outer_vertices(), BTreeSet::new()));
    Outcome {
        name: entry.name.clone(),
        n: g.vertex_count(),
        max_back,
        steps,
        measure_violations,
        charge_raw: report.total_raw(),
        charge_final: report.total_final(),
        charge_expected: report.expected_total,
    }
}

/// Applies `f` to every item on a single thread.
pub fn map_sequential<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Applies `f` to every item on a pool of `jobs` threads, keeping the input
/// order.
#[cfg(feature = "parallel")]
pub fn map_parallel<T: Sync, R: Send>(
    items: &[T],
    jobs: usize,
    f: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}

/// Parallel when the feature is on and `jobs > 1`.
pub fn map_jobs<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        return map_parallel(items, jobs, f);
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    map_sequential(items, f)
}

pub fn run_corpus(entries: &[CorpusEntry], jobs: usize, opts: SolveOptions) -> Vec<Outcome> {
    map_jobs(entries, jobs, |e| process(e, opts))
}
