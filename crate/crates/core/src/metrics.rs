//! Work counters, threshold-decay traces and their CSV forms.
//!
//! Counting conventions: every edge handed out by sorted access, by a
//! random access on the adjacency index, or by a probe of the rank-join
//! seen-edge index counts as one edge read. A probe that returns nothing
//! costs nothing. A join is one probe of a path end that yields at least one
//! cycle-free composition; `paths_constructed` counts the compositions.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Duration;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunMetrics {
    pub edge_reads: u64,
    pub joins: u64,
    /// Heavy path: every length. Rank join: length-ℓ only.
    pub paths_constructed: u64,
    /// Index `l` holds the constructions of length-`l` paths.
    pub paths_by_length: Vec<u64>,
    pub duplicates_discarded: u64,
    /// Sorted-access depth `d` at termination.
    pub depth: u64,
    pub peak_stored_paths: u64,
    /// Greedy seed restarts.
    pub restarts: u64,
    pub wall_time: Duration,
}

impl RunMetrics {
    pub(crate) fn constructed(&mut self, length: usize) {
        self.paths_constructed += 1;
        if self.paths_by_length.len() <= length {
            self.paths_by_length.resize(length + 1, 0);
        }
        self.paths_by_length[length] += 1;
    }

    pub(crate) fn observe_stored(&mut self, stored: usize) {
        self.peak_stored_paths = self.peak_stored_paths.max(stored as u64);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trigger {
    SortedAccess,
    PathReturn,
}

impl fmt::Display for Trigger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trigger::SortedAccess => "sorted-access",
            Trigger::PathReturn => "path-return",
        })
    }
}

impl FromStr for Trigger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sorted-access" => Ok(Trigger::SortedAccess),
            "path-return" => Ok(Trigger::PathReturn),
            other => Err(Error::InvalidArgument(format!("unknown trigger {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdTraceRow {
    pub event: u64,
    pub l: usize,
    pub theta: f64,
    pub trigger: Trigger,
}

/// Shared bookkeeping for one solver run: counters plus an optional
/// threshold trace stamped from a single event clock.
#[derive(Clone, Debug, Default)]
pub struct Recorder {
    pub metrics: RunMetrics,
    trace: Option<Vec<ThresholdTraceRow>>,
    clock: u64,
}

impl Recorder {
    pub fn new(trace: bool) -> Self {
        Recorder {
            trace: trace.then(Vec::new),
            ..Default::default()
        }
    }

    /// Advances the event clock and returns the new stamp.
    pub fn tick(&mut self) -> u64 {
        self.clock += 1;
        self.clock
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn threshold(&mut self, l: usize, theta: f64, trigger: Trigger) {
        if self.trace.is_some() {
            let event = self.tick();
            if let Some(rows) = self.trace.as_mut() {
                rows.push(ThresholdTraceRow {
                    event,
                    l,
                    theta,
                    trigger,
                });
            }
        }
    }

    pub fn into_parts(self) -> (RunMetrics, Vec<ThresholdTraceRow>) {
        (self.metrics, self.trace.unwrap_or_default())
    }
}

/// Checks that, for each `l`, θ_l never increases along the trace.
pub fn trace_is_non_increasing(rows: &[ThresholdTraceRow]) -> bool {
    let mut last: Vec<f64> = Vec::new();
    for row in rows {
        if last.len() <= row.l {
            last.resize(row.l + 1, f64::INFINITY);
        }
        if row.theta > last[row.l] {
            return false;
        }
        last[row.l] = row.theta;
    }
    true
}

pub const TRACE_HEADER: [&str; 4] = ["event", "l", "theta", "trigger"];

pub fn write_trace_csv<W: Write>(rows: &[ThresholdTraceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.event.to_string(),
            r.l.to_string(),
            r.theta.to_string(),
            r.trigger.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace_csv<R: Read>(input: R) -> Result<Vec<ThresholdTraceRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    check_header(rdr.headers().map_err(csv_err)?, &TRACE_HEADER)?;
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err)?;
            Ok(ThresholdTraceRow {
                event: field(&rec, 0)?,
                l: field(&rec, 1)?,
                theta: field(&rec, 2)?,
                trigger: field(&rec, 3)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    Exhausted,
    Heuristic,
    Failed,
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunStatus::Ok => "ok",
            RunStatus::Exhausted => "exhausted",
            RunStatus::Heuristic => "heuristic",
            RunStatus::Failed => "failed",
        })
    }
}

impl FromStr for RunStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ok" => Ok(RunStatus::Ok),
            "exhausted" => Ok(RunStatus::Exhausted),
            "heuristic" => Ok(RunStatus::Heuristic),
            "failed" => Ok(RunStatus::Failed),
            other => Err(Error::InvalidArgument(format!("unknown status {other:?}"))),
        }
    }
}

/// One row of the metrics CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRecord {
    pub algo: String,
    pub instance: String,
    pub length: usize,
    pub k: usize,
    /// `None` for algorithms without a random access strategy.
    pub ra_strategy: Option<bool>,
    pub capacity: Option<usize>,
    pub edge_reads: u64,
    pub joins: u64,
    pub paths_constructed: u64,
    pub duplicates_discarded: u64,
    pub depth: u64,
    pub peak_stored_paths: u64,
    pub wall_ms: f64,
    pub status: RunStatus,
}

pub const METRICS_HEADER: [&str; 14] = [
    "algo",
    "instance",
    "length",
    "k",
    "ra_strategy",
    "capacity",
    "edge_reads",
    "joins",
    "paths_constructed",
    "duplicates_discarded",
    "depth",
    "peak_stored_paths",
    "wall_ms",
    "status",
];

impl MetricsRecord {
    fn fields(&self) -> [String; 14] {
        [
            self.algo.clone(),
            self.instance.clone(),
            self.length.to_string(),
            self.k.to_string(),
            match self.ra_strategy {
                Some(true) => "on".into(),
                Some(false) => "off".into(),
                None => "-".into(),
            },
            self.capacity
                .map_or_else(|| "none".into(), |c| c.to_string()),
            self.edge_reads.to_string(),
            self.joins.to_string(),
            self.paths_constructed.to_string(),
            self.duplicates_discarded.to_string(),
            self.depth.to_string(),
            self.peak_stored_paths.to_string(),
            self.wall_ms.to_string(),
            self.status.to_string(),
        ]
    }
}

pub fn write_metrics_csv<W: Write>(records: &[MetricsRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(METRICS_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record(r.fields()).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_metrics_csv<R: Read>(input: R) -> Result<Vec<MetricsRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    check_header(rdr.headers().map_err(csv_err)?, &METRICS_HEADER)?;
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err)?;
            let ra_strategy = match &rec[4] {
                "on" => Some(true),
                "off" => Some(false),
                "-" => None,
                other => return Err(Error::InvalidArgument(format!("bad ra_strategy {other:?}"))),
            };
            let capacity = match &rec[5] {
                "none" => None,
                _ => Some(field(&rec, 5)?),
            };
            Ok(MetricsRecord {
                algo: rec[0].to_string(),
                instance: rec[1].to_string(),
                length: field(&rec, 2)?,
                k: field(&rec, 3)?,
                ra_strategy,
                capacity,
                edge_reads: field(&rec, 6)?,
                joins: field(&rec, 7)?,
                paths_constructed: field(&rec, 8)?,
                duplicates_discarded: field(&rec, 9)?,
                depth: field(&rec, 10)?,
                peak_stored_paths: field(&rec, 11)?,
                wall_ms: field(&rec, 12)?,
                status: field(&rec, 13)?,
            })
        })
        .collect()
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv: {e}"))
}

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if found.iter().eq(expected.iter().copied()) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "unexpected CSV header {:?}",
            found.iter().collect::<Vec<_>>()
        )))
    }
}

fn field<T: FromStr>(rec: &csv::StringRecord, i: usize) -> Result<T> {
    let raw = rec.get(i).unwrap_or("");
    raw.parse().map_err(|_| {
        Error::InvalidArgument(format!("column {} has unparsable value {raw:?}", i + 1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trace_monotonicity_check() {
        let row = |event, l, theta| ThresholdTraceRow {
            event,
            l,
            theta,
            trigger: Trigger::PathReturn,
        };
        assert!(trace_is_non_increasing(&[
            row(1, 2, 3.0),
            row(2, 3, 5.0),
            row(3, 2, 3.0)
        ]));
        assert!(!trace_is_non_increasing(&[row(1, 2, 3.0), row(2, 2, 3.5)]));
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_metrics_csv("a,b\n1,2\n".as_bytes()).is_err());
        assert!(read_trace_csv("event,l,theta\n".as_bytes()).is_err());
    }

    #[test]
    fn header_text_is_stable() {
        let mut out = Vec::new();
        write_metrics_csv(&[], &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap().trim_end(),
            "algo,instance,length,k,ra_strategy,capacity,edge_reads,joins,paths_constructed,\
             duplicates_discarded,depth,peak_stored_paths,wall_ms,status"
        );
        let mut out = Vec::new();
        write_trace_csv(&[], &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap().trim_end(),
            "event,l,theta,trigger"
        );
    }

    fn status() -> impl Strategy<Value = RunStatus> {
        prop_oneof![
            Just(RunStatus::Ok),
            Just(RunStatus::Exhausted),
            Just(RunStatus::Heuristic),
            Just(RunStatus::Failed)
        ]
    }

    proptest! {
        #[test]
        fn metrics_csv_round_trip(
            algo in "[a-z]{1,10}",
            instance in "[a-z0-9 ,./\"]{0,20}",
            length in 1usize..100,
            k in 1usize..100,
            ra in proptest::option::of(any::<bool>()),
            capacity in proptest::option::of(0usize..1_000_000),
            counters in proptest::array::uniform6(any::<u64>()),
            wall_ms in 0.0f64..1e9,
            status in status(),
        ) {
            let rec = MetricsRecord {
                algo, instance, length, k, ra_strategy: ra, capacity,
                edge_reads: counters[0], joins: counters[1], paths_constructed: counters[2],
                duplicates_discarded: counters[3], depth: counters[4], peak_stored_paths: counters[5],
                wall_ms, status,
            };
            let mut out = Vec::new();
            write_metrics_csv(std::slice::from_ref(&rec), &mut out).unwrap();
            let back = read_metrics_csv(out.as_slice()).unwrap();
            prop_assert_eq!(back, vec![rec]);
        }

        #[test]
        fn trace_csv_round_trip(thetas in proptest::collection::vec((2usize..8, 0.0f64..100.0, any::<bool>()), 0..20)) {
            let rows: Vec<_> = thetas.iter().enumerate().map(|(i, &(l, theta, sorted))| ThresholdTraceRow {
                event: i as u64 + 1, l, theta,
                trigger: if sorted { Trigger::SortedAccess } else { Trigger::PathReturn },
            }).collect();
            let mut out = Vec::new();
            write_trace_csv(&rows, &mut out).unwrap();
            prop_assert_eq!(read_trace_csv(out.as_slice()).unwrap(), rows);
        }
    }
}
