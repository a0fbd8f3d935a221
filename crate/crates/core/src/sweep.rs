//! Batch runs over seeded random instances.
//!
//! [`par_map`] fans work out over the rayon pool when the `parallel` feature
//! is enabled and runs in order otherwise. Results always come back in input
//! order, so both builds produce identical reports.

use crate::graph::{generate_random, RandomGraphConfig};
use crate::harness::{Algo, SolveConfig, Solver};
use crate::path::Path;
use crate::Result;

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub graphs: usize,
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub edge_probability: f64,
    pub distinct_weights: bool,
    pub lengths: Vec<usize>,
    pub ks: Vec<usize>,
    pub base_seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            graphs: 200,
            min_nodes: 4,
            max_nodes: 10,
            edge_probability: 0.5,
            distinct_weights: true,
            lengths: vec![2, 3, 4, 5],
            ks: vec![1, 3, 5],
            base_seed: 0,
        }
    }
}

impl SweepConfig {
    /// Generator settings of the `index`-th instance.
    pub fn instance(&self, index: usize) -> RandomGraphConfig {
        let span = self.max_nodes - self.min_nodes + 1;
        let seed = self.base_seed + index as u64;
        RandomGraphConfig::new(self.min_nodes + index % span, self.edge_probability, seed)
            .distinct(self.distinct_weights)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub cases: usize,
    pub mismatches: Vec<String>,
}

fn agree(a: &[Path], b: &[Path]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| x.weight().to_bits() == y.weight().to_bits() && x.nodes() == y.nodes())
}

/// Checks every algorithm in `algos` against exhaustive search over the
/// configured instances, lengths and `k` values.
pub fn oracle_sweep(config: &SweepConfig, algos: &[Algo]) -> Result<SweepReport> {
    let indices: Vec<usize> = (0..config.graphs).collect();
    let per_graph = par_map(&indices, |&i| -> Result<SweepReport> {
        let gen = config.instance(i);
        let graph = generate_random(&gen)?;
        let mut report = SweepReport::default();
        for &ell in &config.lengths {
            for &k in &config.ks {
                let cfg = SolveConfig::new(ell, k);
                let oracle = Algo::Dfs.solve(&graph, &cfg)?;
                for algo in algos {
                    report.cases += 1;
                    let out = algo.solve(&graph, &cfg)?;
                    if !agree(&oracle.paths, &out.paths) || oracle.status != out.status {
                        report.mismatches.push(format!(
                            "seed {} nodes {} ell {ell} k {k}: {algo} differs from dfs",
                            gen.seed, gen.nodes
                        ));
                    }
                }
            }
        }
        Ok(report)
    });
    let mut total = SweepReport::default();
    for r in per_graph {
        let r = r?;
        total.cases += r.cases;
        total.mismatches.extend(r.mismatches);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_default_maps_agree() {
        let xs: Vec<u64> = (0..100).collect();
        assert_eq!(map_sequential(&xs, |x| x * x), par_map(&xs, |x| x * x));
    }

    #[test]
    fn small_sweep_is_clean() {
        let cfg = SweepConfig {
            graphs: 10,
            ..Default::default()
        };
        let r = oracle_sweep(&cfg, &[Algo::Dp, Algo::RankJoin, Algo::HeavyPath]).unwrap();
        assert_eq!(r.cases, 10 * 4 * 3 * 3);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }
}
