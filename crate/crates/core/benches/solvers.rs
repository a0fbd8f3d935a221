use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use heavypath::baselines::{dfs_topk, dp_topk};
use heavypath::graph::{generate_fig3, generate_random, RandomGraphConfig};
use heavypath::heavy_path::{heavy_path_topk, HeavyPathOptions};
use heavypath::rank_join::rank_join_topk;
use heavypath::sorted_edges;
use std::hint::black_box;

fn random_instance(c: &mut Criterion) {
    let g = generate_random(&RandomGraphConfig::new(14, 0.5, 11).distinct(true)).unwrap();
    let sorted = sorted_edges(&g);
    let mut group = c.benchmark_group("random14");
    for ell in [3, 5] {
        group.bench_with_input(BenchmarkId::new("dfs", ell), &ell, |b, &ell| {
            b.iter(|| dfs_topk(black_box(&g), ell, 5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dp", ell), &ell, |b, &ell| {
            b.iter(|| dp_topk(black_box(&g), ell, 5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rankjoin", ell), &ell, |b, &ell| {
            b.iter(|| rank_join_topk(black_box(&sorted), ell, 5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("heavypath", ell), &ell, |b, &ell| {
            b.iter(|| heavy_path_topk(black_box(&g), ell, 5, HeavyPathOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn fan_out(c: &mut Criterion) {
    let mut group = c.benchmark_group("fig3");
    for n in [100, 1000] {
        let g = generate_fig3(n).unwrap();
        let sorted = sorted_edges(&g);
        group.bench_with_input(BenchmarkId::new("rankjoin", n), &n, |b, _| {
            b.iter(|| rank_join_topk(black_box(&sorted), 3, 1).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("heavypath", n), &n, |b, _| {
            b.iter(|| heavy_path_topk(black_box(&g), 3, 1, HeavyPathOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, random_instance, fan_out);
criterion_main!(benches);
