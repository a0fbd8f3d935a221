//! Undirected weighted graphs, their ingestion formats and the sorted edge
//! relation that the threshold-based solvers scan.

mod generate;
mod io;
mod transform;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use generate::{fig1, generate_fig3, generate_random, RandomGraphConfig, WeightDistribution};
pub use io::{load_dimacs, load_edge_list, write_edge_list, DuplicatePolicy, LoadOptions};
pub use transform::{build_cooccurrence_graph, normalize_for_lightest, DEFAULT_DICE_THRESHOLD};

/// Dense node identifier assigned at load time.
pub type NodeId = u32;

/// An undirected edge stored under its normalized key `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

impl Edge {
    pub fn key(&self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }

    /// The endpoint opposite `node`, if `node` is an endpoint.
    pub fn other(&self, node: NodeId) -> Option<NodeId> {
        if node == self.u {
            Some(self.v)
        } else if node == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

/// Immutable undirected graph with non-negative edge weights.
///
/// Edges are stored once under `u < v`. Each node's adjacency list is ordered
/// by weight descending, then neighbor id ascending, so random access visits
/// heavier edges first and every traversal is deterministic.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
    w_max: f64,
    w_min: f64,
    d_max: usize,
}

impl WeightedGraph {
    fn from_parts(labels: Vec<String>, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| e.key());
        let mut adjacency = vec![Vec::new(); labels.len()];
        for e in &edges {
            adjacency[e.u as usize].push((e.v, e.weight));
            adjacency[e.v as usize].push((e.u, e.weight));
        }
        for list in &mut adjacency {
            list.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        }
        let w_max = edges
            .iter()
            .map(|e| e.weight)
            .fold(f64::NEG_INFINITY, f64::max);
        let w_min = edges.iter().map(|e| e.weight).fold(f64::INFINITY, f64::min);
        let d_max = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        WeightedGraph {
            labels,
            edges,
            adjacency,
            w_max: if w_max.is_finite() { w_max } else { 0.0 },
            w_min: if w_min.is_finite() { w_min } else { 0.0 },
            d_max,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in normalized key order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident `(neighbor, weight)` pairs, heaviest first.
    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[node as usize]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node as usize].len()
    }

    pub fn weight(&self, a: NodeId, b: NodeId) -> Option<f64> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&key, Edge::key)
            .ok()
            .map(|i| self.edges[i].weight)
    }

    /// Heaviest edge weight; 0 for an edgeless graph.
    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    /// Lightest edge weight; 0 for an edgeless graph.
    pub fn w_min(&self) -> f64 {
        self.w_min
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as NodeId)
    }

    /// Same topology, every weight replaced by `f(weight)`.
    pub fn map_weights(&self, f: impl Fn(f64) -> f64) -> WeightedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                weight: f(e.weight),
                ..*e
            })
            .collect();
        WeightedGraph::from_parts(self.labels.clone(), edges)
    }
}

/// Collects labelled edges and assigns dense node ids on `build`.
///
/// Ids follow label order: numeric order when every label parses as an
/// integer, lexicographic order otherwise. Canonical path orientation is
/// therefore the same whether it is read off ids or labels.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    interned: HashMap<String, usize>,
    names: Vec<String>,
    edges: HashMap<(usize, usize), f64>,
    policy: DuplicatePolicy,
}

impl GraphBuilder {
    pub fn new(policy: DuplicatePolicy) -> Self {
        GraphBuilder {
            policy,
            ..Default::default()
        }
    }

    fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.interned.get(label) {
            return i;
        }
        let i = self.names.len();
        self.names.push(label.to_string());
        self.interned.insert(label.to_string(), i);
        i
    }

    pub fn add_node(&mut self, label: &str) {
        self.intern(label);
    }

    /// Adds an undirected edge; `line` is only used for error reporting.
    pub fn add_edge(&mut self, u: &str, v: &str, weight: f64, line: usize) -> Result<()> {
        if !weight.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("edge weight {weight} is not a finite real"),
            });
        }
        if weight < 0.0 {
            return Err(Error::NegativeWeight { line, weight });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line,
                node: u.to_string(),
            });
        }
        let a = self.intern(u);
        let b = self.intern(v);
        let key = if a < b { (a, b) } else { (b, a) };
        match self.edges.get_mut(&key) {
            None => {
                self.edges.insert(key, weight);
            }
            Some(existing) => match self.policy {
                DuplicatePolicy::Reject => {
                    return Err(Error::DuplicateEdge {
                        line,
                        u: u.to_string(),
                        v: v.to_string(),
                    })
                }
                DuplicatePolicy::KeepMax => *existing = existing.max(weight),
            },
        }
        Ok(())
    }

    pub fn build(self) -> WeightedGraph {
        let numeric: Option<Vec<i64>> = self.names.iter().map(|n| n.parse().ok()).collect();
        let mut order: Vec<usize> = (0..self.names.len()).collect();
        match &numeric {
            Some(values) => order.sort_by_key(|&i| values[i]),
            None => order.sort_by(|&a, &b| self.names[a].cmp(&self.names[b])),
        }
        let mut id_of = vec![0 as NodeId; self.names.len()];
        for (id, &tmp) in order.iter().enumerate() {
            id_of[tmp] = id as NodeId;
        }
        let labels = order.iter().map(|&i| self.names[i].clone()).collect();
        let edges = self
            .edges
            .into_iter()
            .map(|((a, b), weight)| {
                let (x, y) = (id_of[a], id_of[b]);
                let (u, v) = if x < y { (x, y) } else { (y, x) };
                Edge { u, v, weight }
            })
            .collect();
        WeightedGraph::from_parts(labels, edges)
    }
}

/// The edge relation in non-increasing weight order, ties by key ascending.
///
/// Immutable; sorted access goes through a [`SortedAccess`] cursor so several
/// runs can scan the same list independently.
#[derive(Clone, Debug)]
pub struct SortedEdgeList {
    entries: Vec<Edge>,
    depth_of: HashMap<(NodeId, NodeId), usize>,
}

impl SortedEdgeList {
    pub fn new(graph: &WeightedGraph) -> Self {
        let mut entries = graph.edges().to_vec();
        entries.sort_by(|a, b| b.weight.total_cmp(&a.weight).then(a.key().cmp(&b.key())));
        let depth_of = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key(), i + 1))
            .collect();
        SortedEdgeList { entries, depth_of }
    }

    pub fn entries(&self) -> &[Edge] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weight of the first entry, or 0 when empty.
    pub fn w_max(&self) -> f64 {
        self.entries.first().map_or(0.0, |e| e.weight)
    }

    /// 1-based position of an edge in sorted order.
    pub fn depth_of(&self, a: NodeId, b: NodeId) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.depth_of.get(&key).copied()
    }

    pub fn cursor(&self) -> SortedAccess<'_> {
        SortedAccess {
            list: self,
            depth: 0,
        }
    }
}

/// Packages [`SortedEdgeList::new`] under its operation name.
pub fn sorted_edges(graph: &WeightedGraph) -> SortedEdgeList {
    SortedEdgeList::new(graph)
}

/// Sorted-access cursor: depth `d` of the last edge returned and its weight `w_d`.
#[derive(Clone, Debug)]
pub struct SortedAccess<'a> {
    list: &'a SortedEdgeList,
    depth: usize,
}

impl<'a> SortedAccess<'a> {
    pub fn read_edge(&mut self) -> Option<Edge> {
        let e = self.list.entries.get(self.depth).copied()?;
        self.depth += 1;
        Some(e)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Weight at the cursor; `None` before the first read.
    pub fn w_d(&self) -> Option<f64> {
        self.depth
            .checked_sub(1)
            .map(|i| self.list.entries[i].weight)
    }

    pub fn is_exhausted(&self) -> bool {
        self.depth == self.list.entries.len()
    }

    pub fn list(&self) -> &'a SortedEdgeList {
        self.list
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph({} nodes, {} edges)",
            self.node_count(),
            self.edge_count()
        )
    }
}
