use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use parity_bench::{construct, decide, fixture, odd_fixture};
use parity_core::generate::Family;
use parity_core::{brute_force, is_pseudoconvex, solve, visibility_graph, OracleLimits};

fn convex_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("convex-path");
    group.sample_size(10);
    for n in [1_000, 10_000, 100_000] {
        let inst = fixture(Family::ConvexPath, n);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("decide", n), &inst, |b, inst| {
            b.iter(|| solve(inst, None, &decide()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("construct", n), &inst, |b, inst| {
            b.iter(|| solve(inst, None, &construct()).unwrap())
        });
    }
    group.finish();
}

fn convex_graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("convex-graph");
    for n in [100, 1_000] {
        let inst = fixture(Family::ConvexGraph, n);
        group.bench_with_input(BenchmarkId::new("construct", n), &inst, |b, inst| {
            b.iter(|| solve(inst, None, &construct()).unwrap())
        });
    }
    group.finish();
}

fn paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("path");
    for (family, n) in [(Family::Spiral, 201), (Family::Zigzag, 200), (Family::Xmonotone, 200)] {
        let inst = fixture(family, n);
        group.bench_with_input(BenchmarkId::new(format!("{family}/pseudoconvex"), n), &inst, |b, inst| {
            b.iter(|| is_pseudoconvex(&inst.graph).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(format!("{family}/construct"), n), &inst, |b, inst| {
            b.iter(|| solve(inst, None, &construct()).unwrap())
        });
    }
    group.finish();
}

fn fast_paths(c: &mut Criterion) {
    let inst = odd_fixture(Family::ConvexPath, 10_000);
    c.bench_function("handshake/10000", |b| b.iter(|| solve(&inst, None, &decide()).unwrap()));
}

fn small(c: &mut Criterion) {
    let inst = fixture(Family::Xmonotone, 8);
    c.bench_function("visibility/xmonotone-8", |b| b.iter(|| visibility_graph(&inst.graph)));
    c.bench_function("oracle/xmonotone-8", |b| {
        b.iter(|| brute_force(&inst, &OracleLimits::default()).unwrap())
    });
}

criterion_group!(benches, convex_paths, convex_graphs, paths, fast_paths, small);
criterion_main!(benches);
