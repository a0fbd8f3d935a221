//! Sequential against pooled execution of the oracle sweep.

use criterion::{criterion_group, criterion_main, Criterion};
use heavypath::graph::generate_random;
use heavypath::harness::{Algo, SolveConfig, Solver};
use heavypath::sweep::{map_sequential, SweepConfig};
use std::hint::black_box;

fn run_case(cfg: &SweepConfig, index: &usize) -> usize {
    let g = generate_random(&cfg.instance(*index)).unwrap();
    let mut found = 0;
    for &ell in &cfg.lengths {
        for algo in [Algo::Dfs, Algo::HeavyPath, Algo::RankJoin] {
            found += algo
                .solve(&g, &SolveConfig::new(ell, 5))
                .unwrap()
                .paths
                .len();
        }
    }
    found
}

fn sweep(c: &mut Criterion) {
    let cfg = SweepConfig {
        graphs: 64,
        max_nodes: 11,
        ..Default::default()
    };
    let indices: Vec<usize> = (0..cfg.graphs).collect();
    let mut group = c.benchmark_group("sweep64");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| map_sequential(black_box(&indices), |i| run_case(&cfg, i)))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| heavypath::sweep::map_parallel(black_box(&indices), |i| run_case(&cfg, i)))
    });
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
