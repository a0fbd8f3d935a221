use std::collections::HashSet;

use heavypath::baselines::{all_simple_paths, count_simple_paths, dfs_topk, dp_topk, greedy_path};
use heavypath::graph::{
    build_cooccurrence_graph, generate_random, normalize_for_lightest, DuplicatePolicy,
    GraphBuilder, RandomGraphConfig, WeightDistribution,
};
use heavypath::heavy_path::{HeavyPathOptions, HeavyPathRun};
use heavypath::path::{rank_order, End, InsertOutcome};
use heavypath::rank_join::rank_join_topk;
use heavypath::{sorted_edges, NodeId, Path, PathBuffer, WeightedGraph};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = WeightedGraph> {
    (3usize..9, 0.2f64..0.9, any::<u64>(), any::<bool>()).prop_map(|(n, p, seed, ties)| {
        let mut cfg = RandomGraphConfig::new(n, p, seed);
        if ties {
            cfg = cfg.with_distribution(WeightDistribution::Levels(4));
        }
        generate_random(&cfg).unwrap()
    })
}

fn left_to_right(p: &Path) -> f64 {
    p.edge_weights().iter().fold(0.0, |acc, w| acc + w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sorted_edges_is_a_sorted_permutation(g in graph_strategy()) {
        let sorted = sorted_edges(&g);
        let ws: Vec<f64> = sorted.entries().iter().map(|e| e.weight).collect();
        prop_assert!(ws.windows(2).all(|w| w[0] >= w[1]));
        let mut a: Vec<_> = sorted.entries().iter().map(|e| (e.key(), e.weight.to_bits())).collect();
        let mut b: Vec<_> = g.edges().iter().map(|e| (e.key(), e.weight.to_bits())).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normalization_swaps_extremes(g in graph_strategy()) {
        prop_assume!(g.edge_count() > 0 && g.w_max() > 0.0);
        let n = normalize_for_lightest(&g).unwrap();
        for (a, b) in g.edges().iter().zip(n.edges()) {
            prop_assert!((0.0..=1.0).contains(&b.weight));
            if a.weight == g.w_max() {
                prop_assert_eq!(b.weight, n.w_min());
            }
            if a.weight == g.w_min() {
                prop_assert_eq!(b.weight, n.w_max());
            }
        }
    }

    #[test]
    fn dice_is_symmetric_and_bounded(
        sessions in proptest::collection::vec(proptest::collection::vec(0u8..6, 0..5), 1..12)
    ) {
        let as_strings: Vec<Vec<String>> = sessions
            .iter()
            .map(|s| s.iter().map(|x| format!("i{x}")).collect())
            .collect();
        let g = build_cooccurrence_graph(&as_strings, 0.0).unwrap();
        for e in g.edges() {
            prop_assert!(e.weight > 0.0 && e.weight <= 1.0);
            prop_assert_eq!(g.weight(e.u, e.v), g.weight(e.v, e.u));
        }
    }

    #[test]
    fn path_weights_are_canonical_sums(g in graph_strategy(), ell in 1usize..5) {
        for p in all_simple_paths(&g, ell) {
            prop_assert!(p.is_canonical());
            prop_assert_eq!(p.canonical(), p.canonical().canonical());
            prop_assert_eq!(p.weight().to_bits(), left_to_right(&p).to_bits());
            prop_assert_eq!(p.reversed().weight(), p.weight());
            let distinct: HashSet<NodeId> = p.nodes().iter().copied().collect();
            prop_assert_eq!(distinct.len(), p.nodes().len());
        }
    }

    #[test]
    fn extension_never_repeats_nodes(g in graph_strategy(), ell in 1usize..4) {
        for p in all_simple_paths(&g, ell) {
            for end in [End::Left, End::Right] {
                for &(nb, w) in g.neighbors(p.end_node(end)) {
                    match p.extend_with(nb, w, end) {
                        Some(q) => {
                            let distinct: HashSet<NodeId> = q.nodes().iter().copied().collect();
                            prop_assert_eq!(distinct.len(), q.nodes().len());
                            prop_assert_eq!(q.len(), p.len() + 1);
                        }
                        None => prop_assert!(p.contains(nb)),
                    }
                }
            }
        }
    }

    #[test]
    fn buffer_order_is_total(g in graph_strategy(), seed in any::<u64>()) {
        let mut paths = all_simple_paths(&g, 2);
        // shuffle deterministically and insert both orientations
        let n = paths.len();
        for i in 0..n {
            let j = (seed.wrapping_mul(i as u64 + 1) % n as u64) as usize;
            paths.swap(i, j);
        }
        let mut buf = PathBuffer::new(2);
        for p in &paths {
            prop_assert_eq!(buf.insert(p.reversed()).unwrap(), InsertOutcome::Inserted);
            prop_assert_eq!(buf.insert(p.clone()).unwrap(), InsertOutcome::Duplicate);
        }
        let held: Vec<&Path> = buf.iter().collect();
        for w in held.windows(2) {
            prop_assert_eq!(rank_order(w[0], w[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn dp_matches_dfs(g in graph_strategy(), ell in 1usize..6, k in 1usize..6) {
        let a = dp_topk(&g, ell, k).unwrap();
        let b = dfs_topk(&g, ell, k).unwrap();
        prop_assert_eq!(a.paths, b.paths);
        prop_assert_eq!(a.exhausted, b.exhausted);
    }

    #[test]
    fn dfs_is_stable_under_relabeling(g in graph_strategy(), ell in 2usize..5) {
        // reverse the label order so every node id changes
        let n = g.node_count() as NodeId;
        let mut b = GraphBuilder::new(DuplicatePolicy::Reject);
        for v in 0..n {
            b.add_node(&(n - 1 - v).to_string());
        }
        for e in g.edges() {
            b.add_edge(&(n - 1 - e.u).to_string(), &(n - 1 - e.v).to_string(), e.weight, 0).unwrap();
        }
        let h = b.build();
        let mut ours: Vec<(u64, Vec<NodeId>)> = all_simple_paths(&g, ell)
            .iter()
            .map(|p| (p.weight().to_bits(), p.nodes().to_vec()))
            .collect();
        let mut theirs: Vec<(u64, Vec<NodeId>)> = all_simple_paths(&h, ell)
            .iter()
            .map(|p| {
                let back: Vec<NodeId> = p.nodes().iter().map(|&v| n - 1 - v).collect();
                let q = Path::from_nodes(&g, &back).unwrap().into_canonical();
                (q.weight().to_bits(), q.nodes().to_vec())
            })
            .collect();
        ours.sort();
        theirs.sort();
        prop_assert_eq!(ours, theirs);
        let top_g = dfs_topk(&g, ell, 3).unwrap().weights();
        let top_h = dfs_topk(&h, ell, 3).unwrap().weights();
        prop_assert_eq!(top_g.len(), top_h.len());
    }

    #[test]
    fn greedy_never_beats_the_optimum(g in graph_strategy(), ell in 1usize..6) {
        let greedy = greedy_path(&g, ell).unwrap();
        let best = dfs_topk(&g, ell, 1).unwrap();
        if let (Some(p), Some(q)) = (greedy.path, best.paths.first()) {
            prop_assert!(p.weight() <= q.weight());
            prop_assert_eq!(p.len(), ell);
        }
    }

    #[test]
    fn rank_join_builds_everything_below_the_threshold_bound(g in graph_strategy(), ell in 2usize..5) {
        let top = dfs_topk(&g, ell, 1).unwrap();
        prop_assume!(!top.paths.is_empty());
        let bound = g.w_min() + (ell - 1) as f64 * g.w_max();
        prop_assume!(top.paths[0].weight() < bound);
        let r = rank_join_topk(&sorted_edges(&g), ell, 1).unwrap();
        prop_assert_eq!(r.metrics.paths_constructed, count_simple_paths(&g, ell));
    }

    #[test]
    fn rank_join_has_seen_every_heavy_shorter_path(g in graph_strategy(), ell in 2usize..5) {
        let sorted = sorted_edges(&g);
        let r = rank_join_topk(&sorted, ell, 1).unwrap();
        prop_assume!(!r.paths.is_empty());
        let floor = r.paths[0].weight() - g.w_max();
        let d = r.metrics.depth as usize;
        let w_d = sorted.entries()[d - 1].weight;
        for p in all_simple_paths(&g, ell - 1) {
            if p.weight() >= floor {
                // with tied weights an equally heavy edge may sit just past depth d
                for (w, &ew) in p.nodes().windows(2).zip(p.edge_weights()) {
                    prop_assert!(ew >= w_d);
                    if ew > w_d {
                        prop_assert!(sorted.depth_of(w[0], w[1]).unwrap() <= d);
                    }
                }
            }
        }
    }

    #[test]
    fn heavy_path_returns_are_non_increasing(g in graph_strategy(), ell in 2usize..5, ra in any::<bool>()) {
        let sorted = sorted_edges(&g);
        let opts = HeavyPathOptions { ra_strategy: ra, ..Default::default() };
        for l in 2..=ell {
            let mut run = HeavyPathRun::new(&g, &sorted, ell, opts).unwrap();
            let mut last = f64::INFINITY;
            let mut seen = HashSet::new();
            while let Some(p) = run.next_heavy_path(l).unwrap() {
                prop_assert!(p.weight() <= last);
                prop_assert!(seen.insert(p.nodes().to_vec()));
                last = p.weight();
            }
            prop_assert_eq!(seen.len() as u64, count_simple_paths(&g, l));
        }
    }
}
