//! Greedy completion once the buffers are full.
//!
//! The top path of the longest non-empty buffer is extended at both ends
//! with every cycle-free edge, ignoring the random access strategy, and the
//! results go one buffer up. When a buffer drains without producing longer
//! paths the search falls back to the longest buffer that still holds
//! something. The answer is rated against a pessimistic bound stitched from
//! the heaviest shorter paths already found.

use super::HeavyPathRun;
use crate::error::{Error, Result};
use crate::path::{End, Path};

#[derive(Clone, Debug, PartialEq)]
pub struct HeuristicResult {
    pub path: Path,
    /// `path.weight / u_ell`.
    pub rho: f64,
    pub u_ell: f64,
    /// Longest non-empty buffer when the capacity was reached.
    pub j: usize,
    /// `u_values[l]` is the heaviest weight of length `l` for `1 <= l < j`.
    pub u_values: Vec<f64>,
}

/// Upper bound on a path of `ell` edges built from `q = ⌊ell/(j-1)⌋` pieces
/// of length `j - 1` and one piece of the remaining length `r`.
///
/// `u[l]` must hold the bound for length `l`, for `1 <= l <= j - 1`.
pub fn stitch_upper_bound(ell: usize, j: usize, u: &[f64]) -> f64 {
    assert!(j >= 2, "stitching needs pieces of at least one edge");
    let piece = j - 1;
    let q = ell / piece;
    let r = ell - q * piece;
    if r > 0 {
        u[piece] * q as f64 + u[r]
    } else {
        u[piece] * q as f64
    }
}

impl HeavyPathRun<'_> {
    fn last_buffer_index(&self) -> Option<usize> {
        (2..=self.ell).rev().find(|&l| !self.buffers[l].is_empty())
    }

    /// Finishes a run stopped by the capacity. Paths in `returned` were
    /// already reported and are skipped.
    pub(super) fn complete_greedily(&mut self, returned: &[Path]) -> Result<HeuristicResult> {
        let failure = || {
            Error::HeuristicFailure(
                "no path of the requested length is reachable from the buffered paths".into(),
            )
        };
        let j = self.last_buffer_index().ok_or_else(failure)?;
        let mut i = j;
        loop {
            while i < self.ell {
                let top = self.buffers[i].remove_top_path()?;
                self.grow_all(&top, i + 1)?;
                i = self.last_buffer_index().ok_or_else(failure)?;
            }
            let top = self.buffers[self.ell].peek().expect("buffer is non-empty");
            if !returned.contains(top) {
                break;
            }
            self.buffers[self.ell].remove_top_path()?;
            i = self.last_buffer_index().ok_or_else(failure)?;
        }

        let mut u_values = vec![0.0; j];
        for (l, slot) in u_values.iter_mut().enumerate().skip(1) {
            *slot = self.best[l].ok_or_else(|| {
                Error::HeuristicFailure(format!("no path of length {l} was returned"))
            })?;
        }
        let u_ell = stitch_upper_bound(self.ell, j, &u_values);
        let top_score = self.buffers[self.ell].top_score();
        let rho = if u_ell > 0.0 { top_score / u_ell } else { 1.0 };
        let path = self.buffers[self.ell].remove_top_path()?;
        Ok(HeuristicResult {
            path,
            rho,
            u_ell,
            j,
            u_values,
        })
    }

    /// Right end first, heaviest edges first; no capacity check.
    fn grow_all(&mut self, shorter: &Path, l: usize) -> Result<()> {
        let graph = self.graph;
        for end in [End::Right, End::Left] {
            let mut joined = false;
            for &(nb, w) in graph.neighbors(shorter.end_node(end)) {
                self.rec.metrics.edge_reads += 1;
                let Some(longer) = shorter.extend_with(nb, w, end) else {
                    continue;
                };
                if !joined {
                    self.rec.metrics.joins += 1;
                    joined = true;
                }
                self.rec.metrics.constructed(l);
                if self.buffers[l].insert(longer)? == crate::path::InsertOutcome::Duplicate {
                    self.rec.metrics.duplicates_discarded += 1;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::dfs_topk;
    use crate::graph::{fig1, generate_random, RandomGraphConfig};
    use crate::heavy_path::{heavy_path_topk, HeavyPathOptions};

    #[test]
    fn stitching_arithmetic() {
        assert_eq!(stitch_upper_bound(10, 4, &[0.0, 1.0, 0.0, 3.0]), 10.0);
        assert_eq!(stitch_upper_bound(6, 3, &[0.0, 1.0, 4.0]), 12.0);
    }

    #[test]
    fn rho_is_weight_over_bound() {
        let g = generate_random(&RandomGraphConfig::new(12, 0.5, 3).distinct(true)).unwrap();
        let exact = heavy_path_topk(&g, 5, 1, HeavyPathOptions::default()).unwrap();
        let peak = exact.result.metrics.peak_stored_paths as usize;
        let opts = HeavyPathOptions {
            capacity: Some(peak / 2),
            ..Default::default()
        };
        let out = heavy_path_topk(&g, 5, 1, opts).unwrap();
        let h = out.heuristic.expect("capacity below the exact peak");
        assert_eq!(h.rho, h.path.weight() / h.u_ell);
        assert!(h.rho <= 1.0);
        assert!(h.path.weight() <= dfs_topk(&g, 5, 1).unwrap().paths[0].weight());
        assert_eq!(h.path.len(), 5);
    }

    #[test]
    fn generous_capacity_stays_exact() {
        let g = fig1();
        let exact = heavy_path_topk(&g, 4, 2, HeavyPathOptions::default()).unwrap();
        let peak = exact.result.metrics.peak_stored_paths as usize;
        let opts = HeavyPathOptions {
            capacity: Some(peak),
            ..Default::default()
        };
        let out = heavy_path_topk(&g, 4, 2, opts).unwrap();
        assert!(out.heuristic.is_none());
        assert_eq!(out.result.paths, exact.result.paths);
    }
}
