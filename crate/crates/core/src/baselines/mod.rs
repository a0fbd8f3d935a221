//! Exhaustive and classical baselines.

mod dfs;
mod dp;
mod greedy;

pub use dfs::{all_simple_paths, count_simple_paths, dfs_topk};
pub use dp::{dp_topk, dp_topk_with_limit, AvoidanceKey, DEFAULT_STATE_LIMIT};
pub use greedy::{greedy_path, GreedyOutcome};
