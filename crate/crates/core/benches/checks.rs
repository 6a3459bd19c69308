//! Condition checks on the global rayon pool vs a single-thread pool.
//!
//! The sequential fallback (`--no-default-features`) runs the same loops
//! inline; the single-thread pool is the in-binary stand-in for it.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use weakcross::crossed::{build_bb, check_bb_cocycle, check_measuring};
use weakcross::fixtures::{groupoid_fixture, paper_example, FixtureBundle};
use weakcross::Field;

fn bundles() -> Vec<(&'static str, FixtureBundle)> {
    vec![
        ("paper8", paper_example(Field::Rational)),
        ("groupoid-3", groupoid_fixture(Field::Rational, 3).unwrap()),
    ]
}

fn checks(c: &mut Criterion) {
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut g = c.benchmark_group("bb-cocycle");
    for (name, b) in bundles() {
        let m = &b.measuring;
        g.bench_with_input(BenchmarkId::new("rayon", name), &b, |bench, b| {
            bench.iter(|| check_bb_cocycle(m, &b.cocycle))
        });
        g.bench_with_input(BenchmarkId::new("single", name), &b, |bench, b| {
            bench.iter(|| single.install(|| check_bb_cocycle(m, &b.cocycle)))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("measuring+build");
    g.sample_size(10);
    for (name, b) in bundles() {
        let m = &b.measuring;
        g.bench_function(BenchmarkId::new("rayon", name), |bench| {
            bench.iter(|| (check_measuring(m), build_bb(m, &b.cocycle).map(|p| p.dim())))
        });
        g.bench_function(BenchmarkId::new("single", name), |bench| {
            bench.iter(|| single.install(|| (check_measuring(m), build_bb(m, &b.cocycle).map(|p| p.dim()))))
        });
    }
    g.finish();
}

criterion_group!(benches, checks);
criterion_main!(benches);
