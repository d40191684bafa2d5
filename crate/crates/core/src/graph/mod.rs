//! Undirected simple graphs of buses and lines.
//!
//! A [`Grid`] is immutable: every mutation (such as removing a line) returns
//! a new value, so one grid can be shared read-only across worker threads.
//! Nodes are always indexed `0..N`; edges are stored once, as `(min, max)`,
//! and kept sorted so that iteration order doubles as the global tie order.

mod betweenness;
pub(crate) mod components;
mod io;

pub use betweenness::edge_betweenness;
pub use components::{connected_components, largest_component_size, AliveMask, ComponentPartition};
pub use io::{parse_edge_list, parse_json, to_edge_list, to_json, Indexing};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{DenseMatrix, SparseMatrix};

/// Grids at or above this size keep adjacency lists only.
pub const DENSE_NODE_LIMIT: usize = 2_000;

/// An undirected edge with `u < v`.
///
/// The derived ordering is lexicographic on `(u, v)`, which is the tie order
/// used everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the canonical form of the pair. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop ({a}, {a})");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl From<[usize; 2]> for Edge {
    fn from(p: [usize; 2]) -> Self {
        Edge::new(p[0], p[1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Debug, Clone)]
pub struct Grid {
    node_count: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<usize>>,
    dense: Option<Vec<bool>>,
    labels: Option<Vec<u64>>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.edges == other.edges
    }
}

impl Eq for Grid {}

impl Grid {
    /// Builds a grid from 0-based endpoint pairs. Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn new<I>(node_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for node in [a, b] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if a == b {
                return Err(Error::SelfLoop {
                    line: 0,
                    node: a as u64,
                });
            }
            edges.push(Edge::new(a, b));
        }
        Ok(Self::from_canonical(node_count, edges))
    }

    /// `edges` must already be canonical and in range.
    pub(crate) fn from_canonical(node_count: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut neighbors = vec![Vec::new(); node_count];
        for e in &edges {
            neighbors[e.u].push(e.v);
            neighbors[e.v].push(e.u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let dense = (node_count < DENSE_NODE_LIMIT).then(|| {
            let mut bits = vec![false; node_count * node_count];
            for e in &edges {
                bits[e.u * node_count + e.v] = true;
                bits[e.v * node_count + e.u] = true;
            }
            bits
        });
        Grid {
            node_count,
            edges,
            neighbors,
            dense,
            labels: None,
        }
    }

    pub(crate) fn with_labels(mut self, labels: Option<Vec<u64>>) -> Self {
        self.labels = labels;
        self
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors[node].len()
    }

    /// Original identifiers of the nodes, when the input used a different base.
    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Whether the dense adjacency table was materialized.
    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a >= self.node_count || b >= self.node_count || a == b {
            return false;
        }
        match &self.dense {
            Some(bits) => bits[a * self.node_count + b],
            None => self.neighbors[a].binary_search(&b).is_ok(),
        }
    }

    /// Binary adjacency entry `A(i, j)`.
    pub fn adjacency(&self, a: usize, b: usize) -> u8 {
        u8::from(self.has_edge(a, b))
    }

    pub fn edge_index(&self, edge: Edge) -> Option<usize> {
        self.edges.binary_search(&edge).ok()
    }

    /// Returns a copy of the grid without `edge`. The node set is unchanged.
    pub fn remove_edge(&self, edge: Edge) -> Result<Grid> {
        self.remove_edges(&[edge])
    }

    pub fn remove_edges(&self, removed: &[Edge]) -> Result<Grid> {
        for &e in removed {
            if self.edge_index(e).is_none() {
                return Err(Error::MissingEdge(e));
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed.contains(e))
            .collect();
        Ok(Grid::from_canonical(self.node_count, edges).with_labels(self.labels.clone()))
    }

    pub fn isolated_count(&self) -> usize {
        self.neighbors.iter().filter(|n| n.is_empty()).count()
    }

    pub fn is_connected(&self) -> bool {
        let mask = AliveMask::all_alive(self.node_count);
        largest_component_size(self, &mask).is_ok_and(|s| s == self.node_count)
    }

    /// Adjacency matrix as a sparse nonnegative operator.
    pub fn adjacency_operator(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.neighbors.clone())
    }

    pub fn dense_adjacency(&self) -> DenseMatrix {
        let n = self.node_count;
        let mut m = DenseMatrix::zeros(n);
        for e in &self.edges {
            m.set(e.u, e.v, 1.0);
            m.set(e.v, e.u, 1.0);
        }
        m
    }
}
