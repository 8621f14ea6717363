//! Benchmarks for the hot paths: algebra construction, bracketing, the
//! quartic coefficient scan, and the exact interior-point test.

use chevalley::algebra::GradedAlgebra;
use chevalley::linalg::zero_in_interior;
use chevalley::roots::{CartanType, RootSystem};
use chevalley::{QuarticData, SignConvention};
use chevalley_bench::{module, rng};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    g.bench_function("E8 graded", |b| {
        b.iter(|| {
            let t = CartanType::parse("E8").unwrap();
            black_box(GradedAlgebra::graded(t, 7, SignConvention::default()).unwrap())
        })
    });
    g.finish();
}

fn bench_bracket(c: &mut Criterion) {
    let m = module("E8:a8");
    let mut r = rng(1);
    let x = m.sample_minus_one(&mut r);
    let y = m.sample_minus_one(&mut r);
    c.bench_function("bracket grade -1 pair", |b| {
        b.iter(|| black_box(m.g.bracket(&x, &y)))
    });
    c.bench_function("quartic evaluation", |b| {
        b.iter(|| black_box(m.r_quartic(&x)))
    });
}

fn bench_quartic_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("quartic-scan");
    g.sample_size(10);
    g.bench_function("F4 monomial tables", |b| {
        b.iter(|| black_box(QuarticData::new(module("F4:a1"))))
    });
    g.finish();
}

fn bench_interior(c: &mut Criterion) {
    let rs = RootSystem::new(CartanType::parse("E8").unwrap());
    let points: Vec<Vec<i64>> = rs.roots.iter().map(|r| r.0.clone()).collect();
    c.bench_function("interior point over 240 roots", |b| {
        b.iter(|| black_box(zero_in_interior(&points, 8)))
    });
}

criterion_group!(
    benches,
    bench_build,
    bench_bracket,
    bench_quartic_scan,
    bench_interior
);
criterion_main!(benches);
