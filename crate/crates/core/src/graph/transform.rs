use std::collections::{BTreeMap, BTreeSet};

use super::{DuplicatePolicy, GraphBuilder, WeightedGraph};
use crate::error::{Error, Result};

/// Co-occurrence edges with a Dice coefficient below this are dropped.
pub const DEFAULT_DICE_THRESHOLD: f64 = 0.1;

/// Rewrites weights as `1 - w / w_max` so that the heaviest path of length
/// `l` in the result is the lightest one in the input.
pub fn normalize_for_lightest(graph: &WeightedGraph) -> Result<WeightedGraph> {
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let w_max = graph.w_max();
    if w_max <= 0.0 {
        return Err(Error::InvalidArgument(
            "all edge weights are zero; w_max must be positive".into(),
        ));
    }
    Ok(graph.map_weights(|w| 1.0 - w / w_max))
}

/// Item co-occurrence graph weighted by the Dice coefficient
/// `2|i ∩ j| / (|i| + |j|)`, where `|i|` counts sessions containing `i`.
pub fn build_cooccurrence_graph<S>(sessions: &[S], min_weight: f64) -> Result<WeightedGraph>
where
    S: AsRef<[String]>,
{
    if !(0.0..=1.0).contains(&min_weight) {
        return Err(Error::InvalidArgument(format!(
            "min_weight {min_weight} outside [0, 1]"
        )));
    }
    let mut item_count: BTreeMap<&str, u64> = BTreeMap::new();
    let mut pair_count: BTreeMap<(&str, &str), u64> = BTreeMap::new();
    for session in sessions {
        let items: BTreeSet<&str> = session.as_ref().iter().map(String::as_str).collect();
        for &i in &items {
            *item_count.entry(i).or_default() += 1;
        }
        let items: Vec<&str> = items.into_iter().collect();
        for (x, &a) in items.iter().enumerate() {
            for &b in &items[x + 1..] {
                *pair_count.entry((a, b)).or_default() += 1;
            }
        }
    }

    let mut builder = GraphBuilder::new(DuplicatePolicy::Reject);
    for (&(a, b), &both) in &pair_count {
        let dice = (2 * both) as f64 / (item_count[a] + item_count[b]) as f64;
        if dice >= min_weight {
            builder.add_edge(a, b, dice, 0)?;
        }
    }
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_edge_list, LoadOptions};

    fn sessions(raw: &[&[&str]]) -> Vec<Vec<String>> {
        raw.iter()
            .map(|s| s.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    fn dice(g: &WeightedGraph, a: &str, b: &str) -> Option<f64> {
        g.weight(g.node_by_label(a)?, g.node_by_label(b)?)
    }

    #[test]
    fn normalize_extremes() {
        let g = load_edge_list("a b 2\nb c 1\nc d 0".as_bytes(), LoadOptions::default()).unwrap();
        let n = normalize_for_lightest(&g).unwrap();
        assert_eq!(n.weight(0, 1), Some(0.0));
        assert_eq!(n.weight(1, 2), Some(0.5));
        assert_eq!(n.weight(2, 3), Some(1.0));
    }

    #[test]
    fn normalize_rejects_edgeless() {
        let g = GraphBuilder::new(DuplicatePolicy::Reject).build();
        assert!(matches!(normalize_for_lightest(&g), Err(Error::EmptyGraph)));
    }

    #[test]
    fn identical_sessions() {
        let g = build_cooccurrence_graph(&sessions(&[&["a", "b"], &["a", "b"]]), 0.1).unwrap();
        assert_eq!(dice(&g, "a", "b"), Some(1.0));
    }

    #[test]
    fn hand_counted_dice() {
        let g =
            build_cooccurrence_graph(&sessions(&[&["a", "b"], &["a", "c"], &["a"]]), 0.1).unwrap();
        assert_eq!(dice(&g, "a", "b"), Some(0.5));
        assert_eq!(dice(&g, "a", "c"), Some(0.5));
        assert_eq!(dice(&g, "b", "c"), None);
    }

    #[test]
    fn threshold_filters_weak_pairs() {
        // |a| = 1, |b| = 39, |a ∩ b| = 1: dice = 2 / 40 = 0.05
        let mut raw = vec![vec!["a".to_string(), "b".to_string()]];
        raw.extend((0..38).map(|_| vec!["b".to_string()]));
        let g = build_cooccurrence_graph(&raw, 0.1).unwrap();
        assert_eq!(dice(&g, "a", "b"), None);
        let g = build_cooccurrence_graph(&raw, 0.0).unwrap();
        assert_eq!(dice(&g, "a", "b"), Some(0.05));
    }

    #[test]
    fn repeated_items_in_a_session_count_once() {
        let g = build_cooccurrence_graph(&sessions(&[&["a", "a", "b"]]), 0.1).unwrap();
        assert_eq!(dice(&g, "a", "b"), Some(1.0));
    }

    #[test]
    fn bad_min_weight() {
        assert!(build_cooccurrence_graph(&sessions(&[&["a"]]), 1.5).is_err());
    }
}
