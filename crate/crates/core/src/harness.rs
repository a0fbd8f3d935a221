//! Uniform front end over all solvers plus cross-checking of their outputs.

use std::fmt;
use std::str::FromStr;

use crate::baselines::{dfs_topk, dp_topk, greedy_path};
use crate::error::{Error, Result};
use crate::graph::{sorted_edges, WeightedGraph};
use crate::heavy_path::{heavy_path_topk, HeavyPathOptions, HeuristicResult};
use crate::metrics::{MetricsRecord, RunMetrics, RunStatus, ThresholdTraceRow};
use crate::path::Path;
use crate::rank_join::{rank_join_with, RankJoinOptions};
use crate::sweep::par_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Dfs,
    Dp,
    Greedy,
    RankJoin,
    HeavyPath,
}

impl Algo {
    pub const ALL: [Algo; 5] = [
        Algo::Dfs,
        Algo::Dp,
        Algo::Greedy,
        Algo::RankJoin,
        Algo::HeavyPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Dfs => "dfs",
            Algo::Dp => "dp",
            Algo::Greedy => "greedy",
            Algo::RankJoin => "rankjoin",
            Algo::HeavyPath => "heavypath",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(Algo::name(*self))
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub ell: usize,
    pub k: usize,
    /// Heavy path only; `None` means the default (on).
    pub ra_strategy: Option<bool>,
    /// Heavy path only.
    pub capacity: Option<usize>,
    pub trace: bool,
}

impl SolveConfig {
    pub fn new(ell: usize, k: usize) -> Self {
        SolveConfig {
            ell,
            k,
            ra_strategy: None,
            capacity: None,
            trace: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub solver: String,
    pub paths: Vec<Path>,
    pub status: RunStatus,
    pub metrics: RunMetrics,
    pub trace: Vec<ThresholdTraceRow>,
    pub heuristic: Option<HeuristicResult>,
    /// Whether `paths` claims to be the exact top-k.
    pub exact: bool,
}

impl SolveOutput {
    pub fn record(&self, instance: &str, config: &SolveConfig) -> MetricsRecord {
        let heavy = self.solver == Algo::HeavyPath.name();
        MetricsRecord {
            algo: self.solver.clone(),
            instance: instance.to_string(),
            length: config.ell,
            k: config.k,
            ra_strategy: heavy.then(|| config.ra_strategy.unwrap_or(true)),
            capacity: config.capacity,
            edge_reads: self.metrics.edge_reads,
            joins: self.metrics.joins,
            paths_constructed: self.metrics.paths_constructed,
            duplicates_discarded: self.metrics.duplicates_discarded,
            depth: self.metrics.depth,
            peak_stored_paths: self.metrics.peak_stored_paths,
            wall_ms: self.metrics.wall_time.as_secs_f64() * 1e3,
            status: self.status,
        }
    }
}

/// Anything that answers a top-k query on a graph.
pub trait Solver: Sync {
    fn name(&self) -> String;
    fn solve(&self, graph: &WeightedGraph, config: &SolveConfig) -> Result<SolveOutput>;
}

fn check_flags(algo: Algo, config: &SolveConfig) -> Result<()> {
    if algo == Algo::Greedy && config.k != 1 {
        return Err(Error::InvalidArgument(
            "greedy returns a single path; use k = 1".into(),
        ));
    }
    if algo != Algo::HeavyPath && (config.ra_strategy.is_some() || config.capacity.is_some()) {
        return Err(Error::InvalidArgument(format!(
            "random access strategy and capacity apply to heavypath only, not {algo}"
        )));
    }
    Ok(())
}

fn status_of(exhausted: bool) -> RunStatus {
    if exhausted {
        RunStatus::Exhausted
    } else {
        RunStatus::Ok
    }
}

impl Solver for Algo {
    fn name(&self) -> String {
        Algo::name(*self).to_string()
    }

    fn solve(&self, graph: &WeightedGraph, config: &SolveConfig) -> Result<SolveOutput> {
        check_flags(*self, config)?;
        let (ell, k) = (config.ell, config.k);
        let exact = |r: crate::TopK| SolveOutput {
            solver: self.name(),
            status: status_of(r.exhausted),
            paths: r.paths,
            metrics: r.metrics,
            trace: r.trace,
            heuristic: None,
            exact: true,
        };
        Ok(match self {
            Algo::Dfs => exact(dfs_topk(graph, ell, k)?),
            Algo::Dp => exact(dp_topk(graph, ell, k)?),
            Algo::RankJoin => {
                let opts = RankJoinOptions {
                    trace: config.trace,
                    ..Default::default()
                };
                exact(rank_join_with(&sorted_edges(graph), ell, k, opts)?)
            }
            Algo::HeavyPath => {
                let opts = HeavyPathOptions {
                    ra_strategy: config.ra_strategy.unwrap_or(true),
                    capacity: config.capacity,
                    trace: config.trace,
                    ..Default::default()
                };
                let out = heavy_path_topk(graph, ell, k, opts)?;
                let mut o = exact(out.result);
                if out.heuristic.is_some() {
                    o.status = RunStatus::Heuristic;
                    o.exact = false;
                }
                o.heuristic = out.heuristic;
                o
            }
            Algo::Greedy => {
                let g = greedy_path(graph, ell)?;
                SolveOutput {
                    solver: self.name(),
                    status: if g.path.is_some() {
                        RunStatus::Ok
                    } else {
                        RunStatus::Failed
                    },
                    paths: g.path.into_iter().collect(),
                    metrics: g.metrics,
                    trace: Vec::new(),
                    heuristic: None,
                    exact: false,
                }
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub outputs: Vec<SolveOutput>,
    /// One line per exact output that disagrees with the first exact output.
    pub mismatches: Vec<String>,
}

impl Comparison {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn same_ranking(a: &[Path], b: &[Path]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| x.weight().to_bits() == y.weight().to_bits() && x.nodes() == y.nodes())
}

/// Runs every solver on the same graph, concurrently when the `parallel`
/// feature is on, and checks that all exact answers agree.
pub fn compare(
    graph: &WeightedGraph,
    solvers: &[&dyn Solver],
    config: &SolveConfig,
) -> Result<Comparison> {
    let outputs = par_map(solvers, |s| s.solve(graph, config))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut mismatches = Vec::new();
    let mut reference: Option<&SolveOutput> = None;
    for out in outputs.iter().filter(|o| o.exact) {
        match reference {
            None => reference = Some(out),
            Some(r) if !same_ranking(&r.paths, &out.paths) => mismatches.push(format!(
                "{} disagrees with {}: {:?} vs {:?}",
                out.solver,
                r.solver,
                out.paths.iter().map(Path::weight).collect::<Vec<_>>(),
                r.paths.iter().map(Path::weight).collect::<Vec<_>>(),
            )),
            Some(_) => {}
        }
    }
    Ok(Comparison {
        outputs,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fig1;

    struct OffByOne;

    impl Solver for OffByOne {
        fn name(&self) -> String {
            "broken".into()
        }

        fn solve(&self, graph: &WeightedGraph, config: &SolveConfig) -> Result<SolveOutput> {
            let mut out = Algo::Dfs.solve(graph, config)?;
            out.solver = self.name();
            out.paths.reverse();
            Ok(out)
        }
    }

    #[test]
    fn exact_solvers_agree_on_fig1() {
        let g = fig1();
        let solvers: Vec<&dyn Solver> =
            vec![&Algo::Dfs, &Algo::Dp, &Algo::RankJoin, &Algo::HeavyPath];
        let c = compare(&g, &solvers, &SolveConfig::new(4, 3)).unwrap();
        assert!(c.matched(), "{:?}", c.mismatches);
        assert_eq!(c.outputs.len(), 4);
    }

    #[test]
    fn corrupted_solver_is_caught() {
        let g = fig1();
        let solvers: Vec<&dyn Solver> = vec![&Algo::Dfs, &OffByOne];
        let c = compare(&g, &solvers, &SolveConfig::new(4, 3)).unwrap();
        assert!(!c.matched());
    }

    #[test]
    fn flag_mismatches_are_rejected() {
        let g = fig1();
        assert!(Algo::Greedy.solve(&g, &SolveConfig::new(4, 2)).is_err());
        let mut cfg = SolveConfig::new(4, 1);
        cfg.ra_strategy = Some(false);
        assert!(Algo::Dfs.solve(&g, &cfg).is_err());
        assert!(Algo::HeavyPath.solve(&g, &cfg).is_ok());
    }

    #[test]
    fn names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
        }
        assert!("bogus".parse::<Algo>().is_err());
    }
}
