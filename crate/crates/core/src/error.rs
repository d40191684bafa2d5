use thiserror::Error;

use crate::graph::Edge;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: u64 },

    #[error("graph has no edges")]
    NoEdges,

    #[error("edge ({}, {}) is not present", .0.u, .0.v)]
    MissingEdge(Edge),

    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("mask length {got} does not match node count {expected}")]
    MaskLength { got: usize, expected: usize },

    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e}")]
    Asymmetric { row: usize, col: usize, gap: f64 },

    #[error("power must be an even integer >= 2, got {0}")]
    InvalidPower(u32),

    #[error("{0}")]
    Domain(String),

    #[error(
        "no convergence after {iterations} iterations (residual {residual:e}, best estimate {estimate})"
    )]
    NotConverged {
        iterations: usize,
        residual: f64,
        estimate: f64,
    },
}

impl Error {
    /// Numerical failures map to a distinct CLI exit code.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotConverged { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
