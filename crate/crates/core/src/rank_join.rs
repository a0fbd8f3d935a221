//! Multi-way rank join specialised to paths.
//!
//! Edges arrive by sorted access. Each new edge `(u, v)` is joined against
//! the index of previously seen edges into every simple path of `ℓ` edges
//! that contains it: the segment first grows at the `u` end, and from every
//! left extent it then grows at the `v` end only, so each such path is built
//! exactly once. After the edge at depth `d` no unseen path can beat
//! `θ = w_d + (ℓ-1)·w_max`, and the run stops once `k` results reach `θ`.

use std::collections::VecDeque;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{NodeId, SortedEdgeList};
use crate::metrics::{Recorder, Trigger};
use crate::path::{Path, TopKSet};
use crate::{check_params, TopK};

#[derive(Clone, Copy, Debug, Default)]
pub struct RankJoinOptions {
    /// Fail once more than this many length-ℓ paths have been constructed.
    pub max_constructed: Option<u64>,
    /// Record `θ` after every sorted access.
    pub trace: bool,
}

/// `θ` after a sorted access returned weight `w_d`.
pub fn rank_join_threshold(w_d: f64, ell: usize, w_max: f64) -> f64 {
    w_d + (ell - 1) as f64 * w_max
}

struct Joiner<'a> {
    seen: &'a [Vec<(NodeId, f64)>],
    ell: usize,
    nodes: VecDeque<NodeId>,
    weights: VecDeque<f64>,
    on_path: Vec<bool>,
    rec: &'a mut Recorder,
    top: &'a mut TopKSet,
    cap: Option<u64>,
}

impl Joiner<'_> {
    fn emit(&mut self) -> Result<()> {
        self.rec.metrics.constructed(self.ell);
        if let Some(cap) = self.cap {
            if self.rec.metrics.paths_constructed > cap {
                return Err(Error::ResourceLimit(format!(
                    "rank join constructed more than {cap} paths"
                )));
            }
        }
        let path = Path::from_parts(
            self.nodes.iter().copied().collect(),
            self.weights.iter().copied().collect(),
        );
        self.top.offer(path);
        Ok(())
    }

    /// Free seen neighbours of `at`, counting the probe.
    fn probe(&mut self, at: NodeId) -> Vec<(NodeId, f64)> {
        let hits = &self.seen[at as usize];
        self.rec.metrics.edge_reads += hits.len() as u64;
        let free: Vec<_> = hits
            .iter()
            .copied()
            .filter(|&(nb, _)| !self.on_path[nb as usize])
            .collect();
        if !free.is_empty() {
            self.rec.metrics.joins += 1;
        }
        free
    }

    fn grow_left(&mut self) -> Result<()> {
        if self.weights.len() == self.ell {
            return self.emit();
        }
        self.grow_right()?;
        let at = *self.nodes.front().expect("segment is non-empty");
        for (nb, w) in self.probe(at) {
            self.on_path[nb as usize] = true;
            self.nodes.push_front(nb);
            self.weights.push_front(w);
            self.grow_left()?;
            self.nodes.pop_front();
            self.weights.pop_front();
            self.on_path[nb as usize] = false;
        }
        Ok(())
    }

    fn grow_right(&mut self) -> Result<()> {
        let at = *self.nodes.back().expect("segment is non-empty");
        for (nb, w) in self.probe(at) {
            self.on_path[nb as usize] = true;
            self.nodes.push_back(nb);
            self.weights.push_back(w);
            if self.weights.len() == self.ell {
                self.emit()?;
            } else {
                self.grow_right()?;
            }
            self.nodes.pop_back();
            self.weights.pop_back();
            self.on_path[nb as usize] = false;
        }
        Ok(())
    }
}

/// The `k` heaviest simple paths of length `ell`.
pub fn rank_join_topk(sorted: &SortedEdgeList, ell: usize, k: usize) -> Result<TopK> {
    rank_join_with(sorted, ell, k, RankJoinOptions::default())
}

pub fn rank_join_with(
    sorted: &SortedEdgeList,
    ell: usize,
    k: usize,
    options: RankJoinOptions,
) -> Result<TopK> {
    check_params(ell, k)?;
    let started = Instant::now();
    let node_count = sorted
        .entries()
        .iter()
        .map(|e| e.u.max(e.v) as usize + 1)
        .max()
        .unwrap_or(0);
    let w_max = sorted.w_max();
    let mut rec = Recorder::new(options.trace);
    let mut top = TopKSet::new(k);
    let mut seen: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); node_count];
    let mut on_path = vec![false; node_count];
    let mut cursor = sorted.cursor();

    while let Some(e) = cursor.read_edge() {
        rec.metrics.edge_reads += 1;
        rec.metrics.depth = cursor.depth() as u64;
        on_path[e.u as usize] = true;
        on_path[e.v as usize] = true;
        let mut joiner = Joiner {
            seen: &seen,
            ell,
            nodes: VecDeque::from([e.u, e.v]),
            weights: VecDeque::from([e.weight]),
            on_path: std::mem::take(&mut on_path),
            rec: &mut rec,
            top: &mut top,
            cap: options.max_constructed,
        };
        let joined = joiner.grow_left();
        on_path = std::mem::take(&mut joiner.on_path);
        joined?;
        on_path[e.u as usize] = false;
        on_path[e.v as usize] = false;
        seen[e.u as usize].push((e.v, e.weight));
        seen[e.v as usize].push((e.u, e.weight));

        let theta = rank_join_threshold(e.weight, ell, w_max);
        rec.threshold(ell, theta, Trigger::SortedAccess);
        if top.kth_weight().is_some_and(|kth| kth >= theta) {
            break;
        }
    }

    let (mut metrics, trace) = rec.into_parts();
    metrics.peak_stored_paths = top.len() as u64;
    metrics.wall_time = started.elapsed();
    let exhausted = !top.is_full();
    Ok(TopK {
        paths: top.into_sorted(),
        exhausted,
        metrics,
        trace,
    })
}

/// Sorted-access depth at which the top-1 run terminates.
pub fn rank_join_depth_probe(sorted: &SortedEdgeList, ell: usize) -> Result<u64> {
    Ok(rank_join_topk(sorted, ell, 1)?.metrics.depth)
}
