use std::time::Instant;

use crate::graph::{NodeId, WeightedGraph};
use crate::metrics::RunMetrics;
use crate::path::{Path, TopKSet};
use crate::{check_params, Result, TopK};

/// Walks every simple path of `ell` edges from every start node. Each
/// undirected path is visited twice and reported only in its canonical
/// orientation, where the running sum is already the canonical weight.
fn walk<F: FnMut(&[NodeId], &[f64], f64)>(
    graph: &WeightedGraph,
    ell: usize,
    metrics: &mut RunMetrics,
    mut visit: F,
) {
    let n = graph.node_count();
    let mut on_path = vec![false; n];
    let mut nodes: Vec<NodeId> = Vec::with_capacity(ell + 1);
    let mut weights: Vec<f64> = Vec::with_capacity(ell);
    let mut sums: Vec<f64> = Vec::with_capacity(ell + 1);

    // explicit stack of (node, next neighbor index)
    let mut stack: Vec<(NodeId, usize)> = Vec::with_capacity(ell + 1);
    for start in 0..n as NodeId {
        nodes.push(start);
        sums.push(0.0);
        on_path[start as usize] = true;
        stack.push((start, 0));
        while let Some(&(at, next)) = stack.last() {
            if nodes.len() == ell + 1 {
                if nodes[0] < nodes[ell] {
                    metrics.constructed(ell);
                    visit(&nodes, &weights, *sums.last().unwrap());
                }
            } else if let Some(&(nb, w)) = graph.neighbors(at).get(next) {
                stack.last_mut().unwrap().1 += 1;
                metrics.edge_reads += 1;
                if !on_path[nb as usize] {
                    on_path[nb as usize] = true;
                    let s = *sums.last().unwrap() + w;
                    nodes.push(nb);
                    weights.push(w);
                    sums.push(s);
                    stack.push((nb, 0));
                }
                continue;
            }
            stack.pop();
            let done = nodes.pop().unwrap();
            on_path[done as usize] = false;
            sums.pop();
            weights.pop();
        }
    }
}

/// The `k` heaviest simple paths of length `ell` by exhaustive search.
pub fn dfs_topk(graph: &WeightedGraph, ell: usize, k: usize) -> Result<TopK> {
    check_params(ell, k)?;
    let started = Instant::now();
    let mut metrics = RunMetrics::default();
    let mut top = TopKSet::new(k);
    walk(graph, ell, &mut metrics, |nodes, weights, sum| {
        if top.kth_weight().is_none_or(|kth| sum >= kth) {
            top.offer(Path::from_parts(nodes.to_vec(), weights.to_vec()));
        }
    });
    metrics.wall_time = started.elapsed();
    let exhausted = !top.is_full();
    Ok(TopK {
        paths: top.into_sorted(),
        exhausted,
        metrics,
        trace: Vec::new(),
    })
}

/// Every simple path of length `ell`, canonical, in no particular order.
pub fn all_simple_paths(graph: &WeightedGraph, ell: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut metrics = RunMetrics::default();
    walk(graph, ell, &mut metrics, |nodes, weights, _| {
        out.push(Path::from_parts(nodes.to_vec(), weights.to_vec()));
    });
    out
}

pub fn count_simple_paths(graph: &WeightedGraph, ell: usize) -> u64 {
    let mut metrics = RunMetrics::default();
    let mut count = 0;
    walk(graph, ell, &mut metrics, |_, _, _| count += 1);
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fig1, generate_fig3, DuplicatePolicy, GraphBuilder};

    #[test]
    fn chain_top1() {
        let mut b = GraphBuilder::new(DuplicatePolicy::Reject);
        b.add_edge("a", "b", 1.0, 0).unwrap();
        b.add_edge("b", "c", 2.0, 0).unwrap();
        let g = b.build();
        let r = dfs_topk(&g, 2, 1).unwrap();
        assert_eq!(r.paths.len(), 1);
        assert_eq!(r.paths[0].nodes(), &[0, 1, 2]);
        assert_eq!(r.paths[0].weight(), 3.0);
        assert!(!r.exhausted);
        let r = dfs_topk(&g, 3, 5).unwrap();
        assert!(r.paths.is_empty() && r.exhausted);
    }

    #[test]
    fn fig1_top1_and_quoted_permutation() {
        let g = fig1();
        let r = dfs_topk(&g, 4, 1).unwrap();
        let top = &r.paths[0];
        let labels: Vec<&str> = top.nodes().iter().map(|&n| g.label(n)).collect();
        assert_eq!(labels, ["4", "3", "2", "1", "6"]);
        assert_eq!(top.weight(), 0.73 + 0.93 + 0.93 + 0.76);
        assert!((top.weight() - 3.35).abs() < 1e-12);

        // 4-3-6-1-2
        let other = Path::from_nodes(&g, &[3, 2, 5, 0, 1]).unwrap();
        assert!((other.weight() - 3.08).abs() < 1e-12);
    }

    #[test]
    fn fig3_path_census() {
        for n in [1, 3, 7] {
            let g = generate_fig3(n).unwrap();
            let mut ws: Vec<f64> = all_simple_paths(&g, 3).iter().map(Path::weight).collect();
            ws.sort_by(|a, b| b.total_cmp(a));
            assert_eq!(ws.len(), n + 1);
            assert_eq!(ws[0], 2.001);
            assert!(ws[1..].iter().all(|&w| (w - 0.06).abs() < 1e-15));
            assert_eq!(count_simple_paths(&g, 3), n as u64 + 1);
        }
    }

    #[test]
    fn clique_path_count() {
        // K6 has 6!/(2·1!) = 360 simple paths of length 4
        assert_eq!(count_simple_paths(&fig1(), 4), 360);
        assert_eq!(count_simple_paths(&fig1(), 1), 15);
    }

    #[test]
    fn invalid_parameters() {
        assert!(dfs_topk(&fig1(), 0, 1).is_err());
        assert!(dfs_topk(&fig1(), 1, 0).is_err());
    }
}
