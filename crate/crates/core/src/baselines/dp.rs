//! Top-k over the avoidance-set recursion.
//!
//! `P(j, l, S)` ranks the paths of `l` edges that end at `j` and whose other
//! nodes all lie outside `S`, where `j ∈ S`. For `l = 1` these are the edges
//! `(i, j)` with `i ∉ S`; for `l > 1` they are `P(y, l-1, S ∪ {y}) ∘ (y, j)`
//! over the neighbors `y ∉ S`. Each key owns a lazily advanced stream that
//! remembers every path it has handed out, so the MAX of the recursion turns
//! into an iterator that yields the next heaviest segment on demand.
//!
//! Sums run from the far end towards `j`. A path therefore surfaces twice at
//! the top level, once per orientation, and the copy whose start node is
//! smaller carries exactly the canonical weight. Only that copy is kept.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};
use crate::metrics::RunMetrics;
use crate::path::{Path, TopKSet};
use crate::{check_params, TopK};

/// Default bound on the number of memoized keys.
pub const DEFAULT_STATE_LIMIT: usize = 10_000_000;

/// Memo key `(j, l, S)`; `avoid` is sorted and contains `end_node`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AvoidanceKey {
    pub end_node: NodeId,
    pub length: usize,
    pub avoid: Vec<NodeId>,
}

impl AvoidanceKey {
    fn with(&self, node: NodeId, length: usize) -> AvoidanceKey {
        let mut avoid = self.avoid.clone();
        let at = avoid.binary_search(&node).unwrap_err();
        avoid.insert(at, node);
        AvoidanceKey {
            end_node: node,
            length,
            avoid,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Cand {
    weight: f64,
    /// Start node for `l = 1`, child stream otherwise.
    source: u32,
    rank: u32,
    edge_weight: f64,
}

impl PartialEq for Cand {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cand {}

impl PartialOrd for Cand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cand {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| other.source.cmp(&self.source))
            .then_with(|| other.rank.cmp(&self.rank))
    }
}

struct Stream {
    key: AvoidanceKey,
    started: bool,
    produced: Vec<Cand>,
    frontier: BinaryHeap<Cand>,
}

struct Memo<'g> {
    graph: &'g WeightedGraph,
    streams: Vec<Stream>,
    index: HashMap<AvoidanceKey, u32>,
    limit: usize,
    metrics: RunMetrics,
}

impl<'g> Memo<'g> {
    fn stream_for(&mut self, key: AvoidanceKey) -> Result<u32> {
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        if self.streams.len() >= self.limit {
            return Err(Error::ResourceLimit(format!(
                "dynamic program exceeded {} memoized states",
                self.limit
            )));
        }
        let id = self.streams.len() as u32;
        self.index.insert(key.clone(), id);
        self.streams.push(Stream {
            key,
            started: false,
            produced: Vec::new(),
            frontier: BinaryHeap::new(),
        });
        Ok(id)
    }

    fn start(&mut self, id: u32) -> Result<()> {
        let key = self.streams[id as usize].key.clone();
        let j = key.end_node;
        let mut frontier = BinaryHeap::new();
        for &(y, w) in self.graph.neighbors(j) {
            self.metrics.edge_reads += 1;
            if key.avoid.binary_search(&y).is_ok() {
                continue;
            }
            if key.length == 1 {
                frontier.push(Cand {
                    weight: w,
                    source: y,
                    rank: 0,
                    edge_weight: w,
                });
            } else {
                let child = self.stream_for(key.with(y, key.length - 1))?;
                if let Some(sub) = self.weight_at(child, 0)? {
                    frontier.push(Cand {
                        weight: sub + w,
                        source: child,
                        rank: 0,
                        edge_weight: w,
                    });
                }
            }
        }
        let s = &mut self.streams[id as usize];
        s.frontier = frontier;
        s.started = true;
        Ok(())
    }

    /// Weight of the `rank`-th heaviest path of a stream, advancing it as needed.
    fn weight_at(&mut self, id: u32, rank: usize) -> Result<Option<f64>> {
        if !self.streams[id as usize].started {
            self.start(id)?;
        }
        while self.streams[id as usize].produced.len() <= rank {
            let Some(best) = self.streams[id as usize].frontier.pop() else {
                return Ok(None);
            };
            let length = self.streams[id as usize].key.length;
            self.metrics.constructed(length);
            if length > 1 {
                let next = best.rank + 1;
                if let Some(sub) = self.weight_at(best.source, next as usize)? {
                    self.streams[id as usize].frontier.push(Cand {
                        weight: sub + best.edge_weight,
                        rank: next,
                        ..best
                    });
                }
            }
            self.streams[id as usize].produced.push(best);
        }
        Ok(Some(self.streams[id as usize].produced[rank].weight))
    }

    fn nodes_at(&self, id: u32, rank: usize, out: &mut Vec<NodeId>) {
        let s = &self.streams[id as usize];
        let c = s.produced[rank];
        if s.key.length == 1 {
            out.push(c.source);
        } else {
            self.nodes_at(c.source, c.rank as usize, out);
        }
        out.push(s.key.end_node);
    }

    fn path_at(&self, id: u32, rank: usize) -> Path {
        let mut nodes = Vec::new();
        self.nodes_at(id, rank, &mut nodes);
        let weights = nodes
            .windows(2)
            .map(|w| self.graph.weight(w[0], w[1]).expect("stream follows edges"))
            .collect();
        Path::from_parts(nodes, weights)
    }
}

/// The `k` heaviest simple paths of length `ell` via the memoized recursion.
pub fn dp_topk(graph: &WeightedGraph, ell: usize, k: usize) -> Result<TopK> {
    dp_topk_with_limit(graph, ell, k, DEFAULT_STATE_LIMIT)
}

/// [`dp_topk`] with an explicit bound on memoized keys.
pub fn dp_topk_with_limit(
    graph: &WeightedGraph,
    ell: usize,
    k: usize,
    state_limit: usize,
) -> Result<TopK> {
    check_params(ell, k)?;
    let started = Instant::now();
    let mut memo = Memo {
        graph,
        streams: Vec::new(),
        index: HashMap::new(),
        limit: state_limit,
        metrics: RunMetrics::default(),
    };

    let mut top_level = BinaryHeap::new();
    for j in 0..graph.node_count() as NodeId {
        let id = memo.stream_for(AvoidanceKey {
            end_node: j,
            length: ell,
            avoid: vec![j],
        })?;
        if let Some(w) = memo.weight_at(id, 0)? {
            top_level.push(Cand {
                weight: w,
                source: id,
                rank: 0,
                edge_weight: 0.0,
            });
        }
    }

    let mut top = TopKSet::new(k);
    while let Some(c) = top_level.pop() {
        if top.kth_weight().is_some_and(|kth| c.weight < kth) {
            break;
        }
        let path = memo.path_at(c.source, c.rank as usize);
        if path.is_canonical() {
            top.offer(path);
        }
        let next = c.rank + 1;
        if let Some(w) = memo.weight_at(c.source, next as usize)? {
            top_level.push(Cand {
                weight: w,
                rank: next,
                ..c
            });
        }
    }

    let mut metrics = memo.metrics;
    metrics.wall_time = started.elapsed();
    let exhausted = !top.is_full();
    Ok(TopK {
        paths: top.into_sorted(),
        exhausted,
        metrics,
        trace: Vec::new(),
    })
}
