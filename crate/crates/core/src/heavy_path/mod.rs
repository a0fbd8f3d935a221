//! Per-length buffers with recursively tightened thresholds.
//!
//! Level 1 is sorted access over the edge list. Level `l > 1` keeps a
//! buffer `B_l` of candidate paths and a threshold `θ_l` that bounds every
//! length-`l` path not yet placed in `B_l`. A request for the next path of
//! length `l` pulls paths of length `l - 1` and extends them at both ends by
//! random access until the top of `B_l` strictly exceeds `θ_l`, then returns
//! that top and tightens `θ_{l+1}`.
//!
//! With the random access strategy on, a path only grows at one end by edges
//! no heavier than the edge at its other end. Every path still arises from
//! at least one of its two sub-paths, and from both only when its end edges
//! weigh the same.
//!
//! When the buffers would exceed a path budget, the run either fails or
//! hands its buffers to [`heuristic`] for a greedy completion.

mod heuristic;

use std::collections::{HashMap, HashSet};
use std::time::Instant;

pub use heuristic::{stitch_upper_bound, HeuristicResult};

use crate::error::{Error, Result};
use crate::graph::{sorted_edges, Edge, NodeId, SortedAccess, SortedEdgeList, WeightedGraph};
use crate::metrics::{Recorder, RunMetrics, ThresholdTraceRow, Trigger};
use crate::path::{End, InsertOutcome, Path, PathBuffer, ThresholdState};
use crate::{check_params, TopK};

#[derive(Clone, Copy, Debug)]
pub struct HeavyPathOptions {
    pub ra_strategy: bool,
    /// Total paths the buffers may hold across all lengths.
    pub capacity: Option<usize>,
    /// On hitting the capacity, finish greedily instead of failing.
    pub heuristic: bool,
    pub trace: bool,
    /// Keep an [`AuditLog`] of threshold checks and path creations.
    pub audit: bool,
}

impl Default for HeavyPathOptions {
    fn default() -> Self {
        HeavyPathOptions {
            ra_strategy: true,
            capacity: None,
            heuristic: true,
            trace: false,
            audit: false,
        }
    }
}

/// A level about to compare its buffer top against `θ_l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Checkpoint {
    pub event: u64,
    pub l: usize,
    pub theta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Creation {
    pub first_event: u64,
    pub count: u32,
}

/// Event-stamped record of a run, for offline checks of the thresholds and
/// of how often each path was built. Stamps share one clock with the
/// threshold trace.
#[derive(Clone, Debug, Default)]
pub struct AuditLog {
    pub checkpoints: Vec<Checkpoint>,
    /// Keyed by canonical node sequence.
    pub creations: HashMap<Vec<NodeId>, Creation>,
}

/// Whether extending `path` at `end` by `edge` is worth a random access.
/// The new edge may be no heavier than the edge at the opposite end.
pub fn ra_admissible(path: &Path, edge: &Edge, end: End, strategy_on: bool) -> bool {
    debug_assert!(edge.other(path.end_node(end)).is_some());
    !strategy_on || edge.weight <= path.end_edge_weight(opposite(end))
}

fn opposite(end: End) -> End {
    match end {
        End::Left => End::Right,
        End::Right => End::Left,
    }
}

/// State of one run: buffers `B_2..B_ℓ`, thresholds and the edge cursor.
pub struct HeavyPathRun<'g> {
    graph: &'g WeightedGraph,
    cursor: SortedAccess<'g>,
    ell: usize,
    options: HeavyPathOptions,
    w_max: f64,
    buffers: Vec<PathBuffer>,
    /// Canonical node sequences already handed out, per length. A path can
    /// be rebuilt after its return when both of its sub-paths qualify.
    returned: Vec<HashSet<Vec<NodeId>>>,
    thresholds: ThresholdState,
    exhausted: Vec<bool>,
    /// Weight of the first path returned at each length.
    best: Vec<Option<f64>>,
    stored: usize,
    capacity_hit: bool,
    rec: Recorder,
    audit: Option<AuditLog>,
}

impl<'g> HeavyPathRun<'g> {
    pub fn new(
        graph: &'g WeightedGraph,
        sorted: &'g SortedEdgeList,
        ell: usize,
        options: HeavyPathOptions,
    ) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InvalidArgument(
                "buffered search needs a path length of at least 2".into(),
            ));
        }
        let w_max = sorted.w_max();
        let mut best = vec![None; ell + 1];
        best[1] = Some(w_max);
        Ok(HeavyPathRun {
            graph,
            cursor: sorted.cursor(),
            ell,
            options,
            w_max,
            buffers: (0..=ell).map(PathBuffer::new).collect(),
            returned: vec![HashSet::new(); ell + 1],
            thresholds: ThresholdState::new(ell, w_max),
            exhausted: vec![false; ell + 1],
            best,
            stored: 0,
            capacity_hit: false,
            rec: Recorder::new(options.trace),
            audit: options.audit.then(AuditLog::default),
        })
    }

    pub fn theta(&self, l: usize) -> f64 {
        self.thresholds.get(l)
    }

    pub fn buffer(&self, l: usize) -> &PathBuffer {
        &self.buffers[l]
    }

    pub fn metrics(&self) -> &RunMetrics {
        &self.rec.metrics
    }

    /// Paths currently held across all buffers.
    pub fn stored(&self) -> usize {
        self.stored
    }

    pub fn audit(&self) -> Option<&AuditLog> {
        self.audit.as_ref()
    }

    fn next_edge(&mut self) -> Option<Path> {
        if self.exhausted[1] {
            return None;
        }
        let Some(e) = self.cursor.read_edge() else {
            self.exhausted[1] = true;
            return None;
        };
        self.rec.metrics.edge_reads += 1;
        self.rec.metrics.depth = self.cursor.depth() as u64;
        let theta = 2.0 * e.weight;
        self.thresholds.set(2, theta);
        self.rec.threshold(2, theta, Trigger::SortedAccess);
        Some(Path::from_edge(&e))
    }

    /// The next heaviest path of length `l`, or `None` once none remain.
    ///
    /// Fails with a resource error when the buffers would exceed the
    /// configured capacity.
    pub fn next_heavy_path(&mut self, l: usize) -> Result<Option<Path>> {
        if l == 0 || l > self.ell {
            return Err(Error::InvalidArgument(format!(
                "length {l} outside 1..={}",
                self.ell
            )));
        }
        if self.capacity_hit {
            return Err(self.capacity_error());
        }
        if l == 1 {
            return Ok(self.next_edge());
        }
        if self.exhausted[l] {
            return Ok(None);
        }
        loop {
            let theta = self.thresholds.get(l);
            if self.audit.is_some() {
                let event = self.rec.tick();
                if let Some(log) = self.audit.as_mut() {
                    log.checkpoints.push(Checkpoint { event, l, theta });
                }
            }
            // once shorter paths run out nothing new can enter B_l
            if self.buffers[l].top_score() > theta || self.exhausted[l - 1] {
                break;
            }
            if let Some(shorter) = self.next_heavy_path(l - 1)? {
                self.extend_into(&shorter, l)?;
            }
        }
        if self.buffers[l].is_empty() {
            self.exhausted[l] = true;
            return Ok(None);
        }
        let top = self.buffers[l].remove_top_path()?;
        self.stored -= 1;
        self.returned[l].insert(top.nodes().to_vec());
        self.best[l].get_or_insert(top.weight());
        if l < self.ell {
            let theta = self.buffers[l].top_score().max(self.thresholds.get(l)) + self.w_max;
            self.thresholds.set(l + 1, theta);
            self.rec.threshold(l + 1, theta, Trigger::PathReturn);
        }
        Ok(Some(top))
    }

    fn extend_into(&mut self, shorter: &Path, l: usize) -> Result<()> {
        let graph = self.graph;
        for end in [End::Right, End::Left] {
            let adjacency = graph.neighbors(shorter.end_node(end));
            // adjacency is sorted heaviest first, so admissible edges form a suffix
            let from = if self.options.ra_strategy {
                let bound = shorter.end_edge_weight(opposite(end));
                adjacency.partition_point(|&(_, w)| w > bound)
            } else {
                0
            };
            let mut joined = false;
            for &(nb, w) in &adjacency[from..] {
                self.rec.metrics.edge_reads += 1;
                let Some(longer) = shorter.extend_with(nb, w, end) else {
                    continue;
                };
                if !joined {
                    self.rec.metrics.joins += 1;
                    joined = true;
                }
                self.rec.metrics.constructed(l);
                self.store(l, longer)?;
            }
        }
        Ok(())
    }

    fn store(&mut self, l: usize, path: Path) -> Result<()> {
        let path = path.into_canonical();
        if self.audit.is_some() {
            let event = self.rec.tick();
            if let Some(log) = self.audit.as_mut() {
                log.creations
                    .entry(path.nodes().to_vec())
                    .and_modify(|c| c.count += 1)
                    .or_insert(Creation {
                        first_event: event,
                        count: 1,
                    });
            }
        }
        if self.buffers[l].contains(&path) || self.returned[l].contains(path.nodes()) {
            self.rec.metrics.duplicates_discarded += 1;
            return Ok(());
        }
        if self.options.capacity.is_some_and(|c| self.stored + 1 > c) {
            self.capacity_hit = true;
            return Err(self.capacity_error());
        }
        let outcome = self.buffers[l].insert(path)?;
        debug_assert_eq!(outcome, InsertOutcome::Inserted);
        self.stored += 1;
        self.rec.metrics.observe_stored(self.stored);
        Ok(())
    }

    fn capacity_error(&self) -> Error {
        Error::ResourceLimit(format!(
            "buffers reached their capacity of {} paths",
            self.options.capacity.unwrap_or(0)
        ))
    }

    fn into_parts(self) -> (RunMetrics, Vec<ThresholdTraceRow>, Option<AuditLog>) {
        let (metrics, trace) = self.rec.into_parts();
        (metrics, trace, self.audit)
    }
}

#[derive(Clone, Debug)]
pub struct HeavyPathOutcome {
    /// Exact paths, followed by the heuristic path when one was needed.
    pub result: TopK,
    pub heuristic: Option<HeuristicResult>,
    pub audit: Option<AuditLog>,
}

/// The `k` heaviest simple paths of length `ell`.
pub fn heavy_path_topk(
    graph: &WeightedGraph,
    ell: usize,
    k: usize,
    options: HeavyPathOptions,
) -> Result<HeavyPathOutcome> {
    check_params(ell, k)?;
    let sorted = sorted_edges(graph);
    heavy_path_with(graph, &sorted, ell, k, options)
}

/// [`heavy_path_topk`] over a prebuilt sorted edge list.
pub fn heavy_path_with(
    graph: &WeightedGraph,
    sorted: &SortedEdgeList,
    ell: usize,
    k: usize,
    options: HeavyPathOptions,
) -> Result<HeavyPathOutcome> {
    check_params(ell, k)?;
    let started = Instant::now();
    if ell == 1 {
        return Ok(single_edges(sorted, k, started));
    }

    let mut run = HeavyPathRun::new(graph, sorted, ell, options)?;
    let mut paths = Vec::with_capacity(k.min(1024));
    let mut heuristic = None;
    while paths.len() < k {
        match run.next_heavy_path(ell) {
            Ok(Some(p)) => paths.push(p),
            Ok(None) => break,
            Err(Error::ResourceLimit(_)) if run.capacity_hit && options.heuristic => {
                let found = run.complete_greedily(&paths)?;
                paths.push(found.path.clone());
                heuristic = Some(found);
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let exhausted = heuristic.is_none() && paths.len() < k;
    let (mut metrics, trace, audit) = run.into_parts();
    metrics.wall_time = started.elapsed();
    Ok(HeavyPathOutcome {
        result: TopK {
            paths,
            exhausted,
            metrics,
            trace,
        },
        heuristic,
        audit,
    })
}

fn single_edges(sorted: &SortedEdgeList, k: usize, started: Instant) -> HeavyPathOutcome {
    let mut metrics = RunMetrics::default();
    let mut cursor = sorted.cursor();
    let mut paths = Vec::new();
    while paths.len() < k {
        let Some(e) = cursor.read_edge() else { break };
        metrics.edge_reads += 1;
        paths.push(Path::from_edge(&e));
    }
    metrics.depth = cursor.depth() as u64;
    metrics.wall_time = started.elapsed();
    HeavyPathOutcome {
        result: TopK {
            exhausted: paths.len() < k,
            paths,
            metrics,
            trace: Vec::new(),
        },
        heuristic: None,
        audit: None,
    }
}
