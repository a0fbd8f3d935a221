//! Top-k heaviest simple paths of a fixed length in undirected weighted
//! graphs.
//!
//! Exact solvers share one output contract: distinct paths in canonical
//! orientation, ordered by weight descending then node sequence ascending,
//! with an `exhausted` flag when fewer than `k` paths exist.
//!
//! - [`baselines::dfs_topk`]: depth-limited exhaustive search, the oracle.
//! - [`baselines::dp_topk`]: avoidance-set dynamic program with ranked
//!   per-state iterators.
//! - [`rank_join::rank_join_topk`]: multi-way self-join over sorted edges
//!   with the conservative `w_d + (ℓ-1)·w_max` threshold.
//! - [`heavy_path::heavy_path_topk`]: per-length buffers, random access at
//!   both path ends and recursively tightened per-length thresholds, with a
//!   memory-bounded heuristic fallback.
//!
//! [`harness`] runs solvers side by side and [`sweep`] fans batches of
//! seeded instances out over a thread pool when the `parallel` feature is
//! enabled.

pub mod baselines;
pub mod error;
pub mod graph;
pub mod harness;
pub mod heavy_path;
pub mod metrics;
pub mod path;
pub mod rank_join;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{sorted_edges, Edge, NodeId, SortedEdgeList, WeightedGraph};
pub use metrics::{RunMetrics, ThresholdTraceRow};
pub use path::{Path, PathBuffer};

/// Ranked result of an exact solver run.
#[derive(Clone, Debug)]
pub struct TopK {
    pub paths: Vec<path::Path>,
    /// Fewer than `k` paths of the requested length exist.
    pub exhausted: bool,
    pub metrics: RunMetrics,
    pub trace: Vec<ThresholdTraceRow>,
}

impl TopK {
    pub fn weights(&self) -> Vec<f64> {
        self.paths.iter().map(path::Path::weight).collect()
    }
}

pub(crate) fn check_params(ell: usize, k: usize) -> Result<()> {
    if ell < 1 {
        return Err(Error::InvalidArgument(
            "path length must be at least 1".into(),
        ));
    }
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}
