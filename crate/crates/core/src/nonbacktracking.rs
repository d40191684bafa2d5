//! The modified (non-backtracking) directed graph of a grid.
//!
//! Every line `(i, j)` becomes two nodes `v_ij` and `v_ji`. There is an arc
//! `v_ab -> v_cd` exactly when `b = c` and `a != d`: a walk may continue
//! through `b` along any other line, but never straight back. Nodes are
//! ordered lexicographically by `(tail, head)`, so `v_ij` sits at
//! `offset[i] + rank of j among i's neighbors`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Grid;
use crate::spectral::{DenseMatrix, SparseMatrix};

/// Largest node count for which the dense operator is materialized.
pub const DENSE_ARC_NODE_LIMIT: usize = 8_000;

#[derive(Debug, Clone)]
pub struct ModifiedGraph {
    nodes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    successors: Vec<Vec<usize>>,
}

pub fn build_modified_graph(grid: &Grid) -> Result<ModifiedGraph> {
    if grid.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = grid.node_count();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for i in 0..n {
        offsets.push(offsets[i] + grid.degree(i));
    }

    let mut nodes = Vec::with_capacity(2 * grid.edge_count());
    let mut successors = Vec::with_capacity(2 * grid.edge_count());
    for a in 0..n {
        for &b in grid.neighbors(a) {
            nodes.push((a, b));
            let base = offsets[b];
            successors.push(
                grid.neighbors(b)
                    .iter()
                    .enumerate()
                    .filter(|&(_, &d)| d != a)
                    .map(|(rank, _)| base + rank)
                    .collect(),
            );
        }
    }
    Ok(ModifiedGraph {
        nodes,
        offsets,
        successors,
    })
}

impl ModifiedGraph {
    /// `2|E|`.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Directed pairs `(tail, head)` in position order.
    pub fn nodes(&self) -> &[(usize, usize)] {
        &self.nodes
    }

    pub fn successors(&self, position: usize) -> &[usize] {
        &self.successors[position]
    }

    /// `d_ij`, which equals `deg(j) - 1`.
    pub fn out_degree(&self, position: usize) -> usize {
        self.successors[position].len()
    }

    pub fn position(&self, tail: usize, head: usize) -> Option<usize> {
        let lo = *self.offsets.get(tail)?;
        let hi = *self.offsets.get(tail + 1)?;
        self.nodes[lo..hi]
            .binary_search_by_key(&head, |&(_, h)| h)
            .ok()
            .map(|k| lo + k)
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.successors[from].binary_search(&to).is_ok()
    }

    /// Binary operator with a 1 at `(p, q)` iff there is an arc `p -> q`.
    pub fn adjacency(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.successors.clone())
    }

    /// Dense form, only for graphs with at most [`DENSE_ARC_NODE_LIMIT`] nodes.
    pub fn dense_adjacency(&self) -> Option<DenseMatrix> {
        (self.node_count() <= DENSE_ARC_NODE_LIMIT).then(|| self.adjacency().to_dense())
    }

    /// Debug dump: `{"nodes": [[i, j], ...], "arcs": [[p, q], ...]}`.
    pub fn to_debug_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump {
            nodes: Vec<[usize; 2]>,
            arcs: Vec<[usize; 2]>,
        }
        let dump = Dump {
            nodes: self.nodes.iter().map(|&(a, b)| [a, b]).collect(),
            arcs: self
                .successors
                .iter()
                .enumerate()
                .flat_map(|(p, succ)| succ.iter().map(move |&q| [p, q]))
                .collect(),
        };
        serde_json::to_string(&dump).expect("debug dump serializes")
    }
}

/// Convenience wrapper matching the operator-centric API of the spectral module.
pub fn modified_adjacency(mg: &ModifiedGraph) -> SparseMatrix {
    mg.adjacency()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::LinearOperator;

    #[test]
    fn path_of_three() {
        // a=0, b=1, c=2
        let p3 = Grid::new(3, [(0, 1), (1, 2)]).unwrap();
        let mg = build_modified_graph(&p3).unwrap();
        assert_eq!(mg.nodes(), &[(0, 1), (1, 0), (1, 2), (2, 1)]);
        let ab = mg.position(0, 1).unwrap();
        let bc = mg.position(1, 2).unwrap();
        let cb = mg.position(2, 1).unwrap();
        let ba = mg.position(1, 0).unwrap();
        assert_eq!(mg.successors(ab), &[bc]);
        assert_eq!(mg.successors(cb), &[ba]);
        assert_eq!(mg.arc_count(), 2);
        let dense = mg.dense_adjacency().unwrap();
        assert_eq!(dense.n(), 4);
        let ones: f64 = (0..4).flat_map(|i| dense.row(i).to_vec()).sum();
        assert_eq!(ones, 2.0);
    }

    #[test]
    fn triangle_gives_two_directed_cycles() {
        let k3 = Grid::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let mg = build_modified_graph(&k3).unwrap();
        assert_eq!(mg.node_count(), 6);
        assert_eq!(mg.arc_count(), 6);
        let a = mg.adjacency();
        assert!((0..6).all(|p| a.row_sum(p) == 1));
        // follow v_01 -> v_12 -> v_20 -> v_01
        let mut p = mg.position(0, 1).unwrap();
        let mut seen = vec![mg.nodes()[p]];
        for _ in 0..3 {
            p = mg.successors(p)[0];
            seen.push(mg.nodes()[p]);
        }
        assert_eq!(seen, vec![(0, 1), (1, 2), (2, 0), (0, 1)]);
    }

    #[test]
    fn star_leaf_arcs_are_sinks() {
        let star = Grid::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let mg = build_modified_graph(&star).unwrap();
        assert_eq!(mg.node_count(), 6);
        for leaf in 1..4 {
            let out = mg.position(0, leaf).unwrap();
            assert_eq!(mg.out_degree(out), 0);
            let inward = mg.position(leaf, 0).unwrap();
            assert_eq!(mg.out_degree(inward), 2);
            for &q in mg.successors(inward) {
                let (tail, head) = mg.nodes()[q];
                assert_eq!(tail, 0);
                assert_ne!(head, leaf);
            }
        }
    }

    #[test]
    fn square_continues_uniquely() {
        let c4 = Grid::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let a = modified_adjacency(&build_modified_graph(&c4).unwrap());
        assert_eq!(a.dim(), 8);
        assert!((0..8).all(|p| a.row_sum(p) == 1));
    }

    #[test]
    fn edgeless_grid_is_rejected() {
        let g = Grid::new(3, []).unwrap();
        assert!(matches!(build_modified_graph(&g), Err(Error::NoEdges)));
    }

    #[test]
    fn debug_dump_lists_arcs_by_position() {
        let p3 = Grid::new(3, [(0, 1), (1, 2)]).unwrap();
        let json = build_modified_graph(&p3).unwrap().to_debug_json();
        assert_eq!(
            json,
            r#"{"nodes":[[0,1],[1,0],[1,2],[2,1]],"arcs":[[0,2],[3,1]]}"#
        );
    }
}
