//! Simple paths, the sum aggregate, canonical orientation and the
//! duplicate-free weight-ordered buffers shared by every solver.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, NodeId, WeightedGraph};

/// Path aggregate. Only the sum is instantiated; threshold formulas
/// elsewhere assume it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AggregationSpec {
    #[default]
    Sum,
}

impl AggregationSpec {
    /// Folds edge weights left to right.
    pub fn aggregate<I: IntoIterator<Item = f64>>(self, weights: I) -> f64 {
        match self {
            AggregationSpec::Sum => weights.into_iter().fold(0.0, |acc, w| acc + w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Left,
    Right,
}

/// A simple path `v_0 .. v_l` with its edge weights.
///
/// The cached weight is always the left-to-right sum over the canonical
/// orientation, so a path reached through different derivations compares
/// bit-exactly equal.
#[derive(Clone, Debug)]
pub struct Path {
    nodes: Vec<NodeId>,
    edge_weights: Vec<f64>,
    weight: f64,
}

#[derive(Clone, Debug)]
pub enum Extension {
    Extended(Path),
    /// The new node already lies on the path.
    Cycle,
}

fn is_canonical_order(nodes: &[NodeId]) -> bool {
    nodes.iter().cmp(nodes.iter().rev()) != Ordering::Greater
}

fn canonical_weight(nodes: &[NodeId], edge_weights: &[f64]) -> f64 {
    if is_canonical_order(nodes) {
        AggregationSpec::Sum.aggregate(edge_weights.iter().copied())
    } else {
        AggregationSpec::Sum.aggregate(edge_weights.iter().rev().copied())
    }
}

impl Path {
    pub(crate) fn from_parts(nodes: Vec<NodeId>, edge_weights: Vec<f64>) -> Path {
        debug_assert_eq!(nodes.len(), edge_weights.len() + 1);
        let weight = canonical_weight(&nodes, &edge_weights);
        Path {
            nodes,
            edge_weights,
            weight,
        }
    }

    /// Length-1 path over an edge, oriented `u -> v`.
    pub fn from_edge(edge: &Edge) -> Path {
        Path {
            nodes: vec![edge.u, edge.v],
            edge_weights: vec![edge.weight],
            weight: edge.weight,
        }
    }

    /// Builds a path from a node sequence, checking adjacency and simplicity.
    pub fn from_nodes(graph: &WeightedGraph, nodes: &[NodeId]) -> Result<Path> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("empty node sequence".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(&n) = nodes.iter().find(|&&n| !seen.insert(n)) {
            return Err(Error::InvalidArgument(format!("node {n} repeats")));
        }
        let weights = nodes
            .windows(2)
            .map(|w| {
                graph.weight(w[0], w[1]).ok_or_else(|| {
                    Error::InvalidArgument(format!("no edge between {} and {}", w[0], w[1]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Path::from_parts(nodes.to_vec(), weights))
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_weights
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edge_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_weights.is_empty()
    }

    pub fn end_node(&self, end: End) -> NodeId {
        match end {
            End::Left => self.nodes[0],
            End::Right => *self.nodes.last().expect("non-empty"),
        }
    }

    /// Weight of the edge at the given end.
    pub fn end_edge_weight(&self, end: End) -> f64 {
        match end {
            End::Left => self.edge_weights[0],
            End::Right => *self.edge_weights.last().expect("length >= 1"),
        }
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.nodes.contains(&node)
    }

    pub fn is_canonical(&self) -> bool {
        is_canonical_order(&self.nodes)
    }

    /// The orientation whose node sequence is lexicographically smaller.
    pub fn canonical(&self) -> Path {
        if self.is_canonical() {
            self.clone()
        } else {
            self.reversed()
        }
    }

    pub fn into_canonical(self) -> Path {
        if self.is_canonical() {
            self
        } else {
            self.reversed()
        }
    }

    pub fn reversed(&self) -> Path {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        let mut edge_weights = self.edge_weights.clone();
        edge_weights.reverse();
        Path {
            nodes,
            edge_weights,
            weight: self.weight,
        }
    }

    /// Appends `(end_node, neighbor)` of weight `w` at `end`; `None` when
    /// `neighbor` already lies on the path.
    pub fn extend_with(&self, neighbor: NodeId, w: f64, end: End) -> Option<Path> {
        if self.contains(neighbor) {
            return None;
        }
        let mut nodes = Vec::with_capacity(self.nodes.len() + 1);
        let mut weights = Vec::with_capacity(self.edge_weights.len() + 1);
        match end {
            End::Left => {
                nodes.push(neighbor);
                nodes.extend_from_slice(&self.nodes);
                weights.push(w);
                weights.extend_from_slice(&self.edge_weights);
            }
            End::Right => {
                nodes.extend_from_slice(&self.nodes);
                nodes.push(neighbor);
                weights.extend_from_slice(&self.edge_weights);
                weights.push(w);
            }
        }
        Some(Path::from_parts(nodes, weights))
    }

    /// The `+` operator: adds edge `e` at `end`, rejecting cycles.
    pub fn extend(&self, e: &Edge, end: End) -> Result<Extension> {
        let at = self.end_node(end);
        let other = e.other(at).ok_or(Error::NotIncident {
            u: e.u,
            v: e.v,
            end: at,
        })?;
        Ok(match self.extend_with(other, e.weight, end) {
            Some(p) => Extension::Extended(p),
            None => Extension::Cycle,
        })
    }

    /// `weight<TAB>v_0,...,v_l` in canonical orientation, using node labels.
    pub fn display<'a>(&'a self, graph: &'a WeightedGraph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph }
    }
}

impl PartialEq for Path {
    fn eq(&self, other: &Self) -> bool {
        self.weight.to_bits() == other.weight.to_bits() && self.nodes == other.nodes
    }
}

impl Eq for Path {}

/// Global result order: weight descending, then node sequence ascending.
pub fn rank_order(a: &Path, b: &Path) -> Ordering {
    b.weight
        .total_cmp(&a.weight)
        .then_with(|| a.nodes.cmp(&b.nodes))
}

/// Sorts canonical paths into the global result order.
pub fn sort_ranked(paths: &mut [Path]) {
    paths.sort_by(rank_order);
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a WeightedGraph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.path.canonical();
        write!(f, "{}\t", canon.weight)?;
        for (i, &n) in canon.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.graph.label(n))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Ranked(Path);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        rank_order(&self.0, &other.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    Inserted,
    Duplicate,
}

/// Duplicate-free sorted set of canonical paths of a single length.
#[derive(Clone, Debug)]
pub struct PathBuffer {
    length: usize,
    paths: BTreeSet<Ranked>,
}

impl PathBuffer {
    pub fn new(length: usize) -> Self {
        PathBuffer {
            length,
            paths: BTreeSet::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Weight of the first path, `-inf` when empty.
    pub fn top_score(&self) -> f64 {
        self.paths.first().map_or(f64::NEG_INFINITY, |p| p.0.weight)
    }

    pub fn peek(&self) -> Option<&Path> {
        self.paths.first().map(|r| &r.0)
    }

    pub fn insert(&mut self, path: Path) -> Result<InsertOutcome> {
        if path.len() != self.length {
            return Err(Error::LengthMismatch {
                expected: self.length,
                found: path.len(),
            });
        }
        Ok(if self.paths.insert(Ranked(path.into_canonical())) {
            InsertOutcome::Inserted
        } else {
            InsertOutcome::Duplicate
        })
    }

    /// True when the canonical form of `path` is stored.
    pub fn contains(&self, path: &Path) -> bool {
        self.paths.contains(&Ranked(path.canonical()))
    }

    pub fn remove_top_path(&mut self) -> Result<Path> {
        self.paths
            .pop_first()
            .map(|r| r.0)
            .ok_or(Error::EmptyBuffer)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().map(|r| &r.0)
    }
}

/// Keeps the `k` best distinct canonical paths under the global order.
#[derive(Clone, Debug)]
pub struct TopKSet {
    k: usize,
    paths: BTreeSet<Ranked>,
}

impl TopKSet {
    pub fn new(k: usize) -> Self {
        TopKSet {
            k,
            paths: BTreeSet::new(),
        }
    }

    /// Offers a path; returns whether it is among the current top `k`.
    pub fn offer(&mut self, path: Path) -> bool {
        let ranked = Ranked(path.into_canonical());
        if self.paths.len() == self.k {
            match self.paths.last() {
                Some(worst) if ranked < *worst => {}
                _ => return false,
            }
        }
        if !self.paths.insert(ranked) {
            return false;
        }
        if self.paths.len() > self.k {
            self.paths.pop_last();
        }
        true
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.paths.len() == self.k
    }

    /// Weight of the `k`-th path once `k` paths are held.
    pub fn kth_weight(&self) -> Option<f64> {
        if self.is_full() {
            self.paths.last().map(|r| r.0.weight)
        } else {
            None
        }
    }

    pub fn into_sorted(self) -> Vec<Path> {
        self.paths.into_iter().map(|r| r.0).collect()
    }
}

/// Per-length thresholds `θ_2 .. θ_ℓ`.
#[derive(Clone, Debug)]
pub struct ThresholdState {
    values: Vec<f64>,
}

impl ThresholdState {
    /// `θ_l = w_max · l` for every `l` in `2..=ell`.
    pub fn new(ell: usize, w_max: f64) -> Self {
        ThresholdState {
            values: (0..=ell).map(|l| w_max * l as f64).collect(),
        }
    }

    pub fn get(&self, l: usize) -> f64 {
        self.values[l]
    }

    pub fn set(&mut self, l: usize, theta: f64) {
        self.values[l] = theta;
    }

    pub fn max_length(&self) -> usize {
        self.values.len() - 1
    }
}
