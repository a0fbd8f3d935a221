use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },

    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: String },

    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: String, v: String },

    #[error("line {line}: arc ({u}, {v}) has weight {weight} but its reciprocal has {other}")]
    InconsistentReciprocal {
        line: usize,
        u: String,
        v: String,
        weight: f64,
        other: f64,
    },

    #[error("malformed DIMACS header: {0}")]
    MalformedHeader(String),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("edge ({u}, {v}) is not incident to path end {end}")]
    NotIncident { u: u32, v: u32, end: u32 },

    #[error("path of length {found} offered to buffer of length {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("buffer is empty")]
    EmptyBuffer,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("heuristic failed: {0}")]
    HeuristicFailure(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
