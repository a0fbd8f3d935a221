use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DuplicatePolicy, GraphBuilder, WeightedGraph};
use crate::error::{Error, Result};

const FIG1_EDGES: [(u32, u32, f64); 15] = [
    (1, 2, 0.93),
    (2, 3, 0.93),
    (1, 3, 0.87),
    (2, 4, 0.77),
    (1, 6, 0.76),
    (2, 5, 0.73),
    (3, 4, 0.73),
    (1, 4, 0.73),
    (5, 6, 0.72),
    (3, 5, 0.70),
    (1, 5, 0.70),
    // listed a second time as (1,6) in the original table; the 6-clique needs (2,6)
    (2, 6, 0.70),
    (4, 5, 0.69),
    (3, 6, 0.66),
    (4, 6, 0.58),
];

/// Six-song co-listening clique used as the running example.
pub fn fig1() -> WeightedGraph {
    let mut b = GraphBuilder::new(DuplicatePolicy::Reject);
    for (line, &(u, v, w)) in FIG1_EDGES.iter().enumerate() {
        b.add_edge(&u.to_string(), &v.to_string(), w, line + 1)
            .expect("static table is valid");
    }
    b.build()
}

/// One heavy chain `a-b-c-d` (weights 1, 1, 0.001) next to a light chain
/// `a'-b'-c'` (0.03, 0.02) that fans out to `n` leaves `d'_i` (0.01 each).
///
/// The unique heaviest length-3 path weighs 2.001 and every fan path 0.06, so
/// a solver that waits for the lightest edge must build all `n` fan paths.
pub fn generate_fig3(n: usize) -> Result<WeightedGraph> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "fan-out n must be at least 1".into(),
        ));
    }
    let mut b = GraphBuilder::new(DuplicatePolicy::Reject);
    let fixed = [
        ("a", "b", 1.0),
        ("b", "c", 1.0),
        ("c", "d", 0.001),
        ("a'", "b'", 0.03),
        ("b'", "c'", 0.02),
    ];
    for (u, v, w) in fixed {
        b.add_edge(u, v, w, 0)?;
    }
    for i in 1..=n {
        b.add_edge("c'", &format!("d'_{i}"), 0.01, 0)?;
    }
    Ok(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightDistribution {
    /// Uniform on `[low, high)`.
    Uniform { low: f64, high: f64 },
    /// Uniform over `{1/levels, 2/levels, ..., 1}`; produces ties on purpose.
    Levels(u32),
}

impl Default for WeightDistribution {
    fn default() -> Self {
        WeightDistribution::Uniform {
            low: 0.0,
            high: 1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomGraphConfig {
    pub nodes: usize,
    pub edge_probability: f64,
    pub distribution: WeightDistribution,
    pub seed: u64,
    pub distinct_weights: bool,
}

impl RandomGraphConfig {
    pub fn new(nodes: usize, edge_probability: f64, seed: u64) -> Self {
        RandomGraphConfig {
            nodes,
            edge_probability,
            distribution: WeightDistribution::default(),
            seed,
            distinct_weights: false,
        }
    }

    pub fn distinct(mut self, on: bool) -> Self {
        self.distinct_weights = on;
        self
    }

    pub fn with_distribution(mut self, distribution: WeightDistribution) -> Self {
        self.distribution = distribution;
        self
    }
}

/// Erdős–Rényi style graph on nodes `0..nodes`, deterministic per seed.
pub fn generate_random(config: &RandomGraphConfig) -> Result<WeightedGraph> {
    let p = config.edge_probability;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    match config.distribution {
        WeightDistribution::Uniform { low, high }
            if !(low >= 0.0 && low < high && high.is_finite()) =>
        {
            return Err(Error::InvalidArgument(format!(
                "uniform weight range [{low}, {high}) must be non-empty and non-negative"
            )));
        }
        WeightDistribution::Levels(0) => {
            return Err(Error::InvalidArgument("levels must be positive".into()));
        }
        _ => {}
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let draw = |rng: &mut ChaCha8Rng| match config.distribution {
        WeightDistribution::Uniform { low, high } => rng.random_range(low..high),
        WeightDistribution::Levels(levels) => {
            f64::from(rng.random_range(1..=levels)) / f64::from(levels)
        }
    };

    let mut b = GraphBuilder::new(DuplicatePolicy::Reject);
    for i in 0..config.nodes {
        b.add_node(&i.to_string());
    }
    let mut used: HashSet<u64> = HashSet::new();
    for i in 0..config.nodes {
        for j in i + 1..config.nodes {
            if !rng.random_bool(p) {
                continue;
            }
            let mut w = draw(&mut rng);
            if config.distinct_weights {
                let mut attempts = 0;
                while !used.insert(w.to_bits()) {
                    attempts += 1;
                    if attempts > 10_000 {
                        return Err(Error::InvalidArgument(
                            "cannot draw pairwise distinct weights from this distribution".into(),
                        ));
                    }
                    w = draw(&mut rng);
                }
            }
            b.add_edge(&i.to_string(), &j.to_string(), w, 0)?;
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig3_shape() {
        let g = generate_fig3(1).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (8, 6));
        assert_eq!(g.w_min(), 0.001);
        assert_eq!(g.w_max(), 1.0);
        let g = generate_fig3(3).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (10, 8));
        assert!(generate_fig3(0).is_err());
    }

    #[test]
    fn complete_random_graph() {
        let g = generate_random(&RandomGraphConfig::new(4, 1.0, 3)).unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn random_is_deterministic() {
        let cfg = RandomGraphConfig::new(12, 0.4, 99);
        let a = generate_random(&cfg).unwrap();
        let b = generate_random(&cfg).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = generate_random(&RandomGraphConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn distinct_weights_flag() {
        let cfg = RandomGraphConfig::new(9, 1.0, 5)
            .with_distribution(WeightDistribution::Levels(200))
            .distinct(true);
        let g = generate_random(&cfg).unwrap();
        let mut ws: Vec<u64> = g.edges().iter().map(|e| e.weight.to_bits()).collect();
        ws.sort_unstable();
        ws.dedup();
        assert_eq!(ws.len(), g.edge_count());
    }

    #[test]
    fn distinct_weights_impossible() {
        let cfg = RandomGraphConfig::new(6, 1.0, 5)
            .with_distribution(WeightDistribution::Levels(3))
            .distinct(true);
        assert!(generate_random(&cfg).is_err());
    }

    #[test]
    fn invalid_probability() {
        assert!(generate_random(&RandomGraphConfig::new(3, 1.5, 0)).is_err());
    }
}
