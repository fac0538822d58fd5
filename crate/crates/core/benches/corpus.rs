use std::hint::black_box;

use col2_core::batch::{map_sequential, process, random_corpus, CorpusEntry};
use col2_core::constructive::SolveOptions;
use criterion::{criterion_group, criterion_main, Criterion};

fn entries() -> Vec<CorpusEntry> {
    random_corpus(48, 120, 7)
}

fn corpus(c: &mut Criterion) {
    let entries = entries();
    let opts = SolveOptions::default();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| map_sequential(black_box(&entries), |e| process(e, opts)))
    });
    #[cfg(feature = "parallel")]
    {
        let jobs = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        group.bench_function(format!("parallel/{jobs}"), |b| {
            b.iter(|| {
                col2_core::batch::map_parallel(black_box(&entries), jobs, |e| process(e, opts))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, corpus);
criterion_main!(benches);
