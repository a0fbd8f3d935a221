use std::time::Instant;

use crate::graph::{sorted_edges, NodeId, WeightedGraph};
use crate::metrics::RunMetrics;
use crate::path::{End, Path};
use crate::{check_params, Result};

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    /// `None` when no seed grows to the requested length.
    pub path: Option<Path>,
    pub metrics: RunMetrics,
}

fn heaviest_free(
    graph: &WeightedGraph,
    path: &Path,
    end: End,
    metrics: &mut RunMetrics,
) -> Option<(NodeId, f64)> {
    for &(nb, w) in graph.neighbors(path.end_node(end)) {
        metrics.edge_reads += 1;
        if !path.contains(nb) {
            return Some((nb, w));
        }
    }
    None
}

/// Grows a path from the heaviest edge by repeatedly taking the heaviest
/// cycle-free edge at either end, right end first on ties. A seed that gets
/// stuck short of `ell` edges is abandoned for the next heaviest edge.
pub fn greedy_path(graph: &WeightedGraph, ell: usize) -> Result<GreedyOutcome> {
    check_params(ell, 1)?;
    let started = Instant::now();
    let mut metrics = RunMetrics::default();
    let sorted = sorted_edges(graph);
    let mut found = None;

    for (i, seed) in sorted.entries().iter().enumerate() {
        if i > 0 {
            metrics.restarts += 1;
        }
        metrics.edge_reads += 1;
        metrics.depth = i as u64 + 1;
        let mut path = Path::from_edge(seed);
        while path.len() < ell {
            let right = heaviest_free(graph, &path, End::Right, &mut metrics);
            let left = heaviest_free(graph, &path, End::Left, &mut metrics);
            let step = match (right, left) {
                (Some(r), Some(l)) if l.1 > r.1 => Some((l, End::Left)),
                (Some(r), _) => Some((r, End::Right)),
                (None, Some(l)) => Some((l, End::Left)),
                (None, None) => None,
            };
            let Some(((nb, w), end)) = step else { break };
            path = path
                .extend_with(nb, w, end)
                .expect("neighbor is off the path");
            metrics.constructed(path.len());
        }
        if path.len() == ell {
            found = Some(path.into_canonical());
            break;
        }
    }

    metrics.wall_time = started.elapsed();
    Ok(GreedyOutcome {
        path: found,
        metrics,
    })
}
