//! Seeded synthetic graphs for tests, benchmarks and fixtures.
//!
//! [`geometric_grid`] imitates the sparse, planar-ish look of transmission
//! networks: nodes are scattered in the unit square, joined by a Euclidean
//! minimum spanning tree, and then lines to near neighbors, drawn in random
//! order, are added until the requested line count is reached.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Grid};

/// Candidate extra lines are drawn from each node's nearest neighbors.
const NEAREST: usize = 4;

fn check_counts(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("need at least one node".into()));
    }
    let max = n * (n - 1) / 2;
    if m + 1 < n || m > max {
        return Err(Error::Domain(format!(
            "a connected simple graph on {n} nodes has between {} and {max} edges, got {m}",
            n - 1
        )));
    }
    Ok(())
}

/// Uniform random recursive tree: node `i` attaches to a node below it.
pub fn random_tree(n: usize, seed: u64) -> Result<Grid> {
    check_counts(n, n.saturating_sub(1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Grid::new(n, (1..n).map(|i| (rng.gen_range(0..i), i)))
}

/// A random tree plus `m - (n - 1)` extra edges chosen uniformly.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Grid> {
    check_counts(n, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree: Vec<Edge> = (1..n).map(|i| Edge::new(rng.gen_range(0..i), i)).collect();
    let mut missing = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let e = Edge::new(a, b);
            if !tree.contains(&e) {
                missing.push(e);
            }
        }
    }
    let extra = sample(&mut rng, missing.len(), m - (n - 1));
    let edges = tree.into_iter().chain(extra.iter().map(|i| missing[i]));
    Grid::new(n, edges.map(|e| (e.u, e.v)))
}

/// Spatial grid-like graph with exactly `m` edges; see the module docs.
pub fn geometric_grid(n: usize, m: usize, seed: u64) -> Result<Grid> {
    check_counts(n, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let dist = |a: usize, b: usize| {
        let (dx, dy) = (pts[a].0 - pts[b].0, pts[a].1 - pts[b].1);
        dx * dx + dy * dy
    };

    // Prim on the complete graph.
    let mut edges = Vec::with_capacity(m);
    let mut in_tree = vec![false; n];
    let mut best: Vec<(f64, usize)> = (0..n).map(|j| (dist(0, j), 0)).collect();
    in_tree[0] = true;
    for _ in 1..n {
        let next = (0..n)
            .filter(|&j| !in_tree[j])
            .min_by(|&a, &b| best[a].0.total_cmp(&best[b].0))
            .expect("a node remains outside the tree");
        in_tree[next] = true;
        edges.push(Edge::new(next, best[next].1));
        for j in 0..n {
            if !in_tree[j] {
                let d = dist(next, j);
                if d < best[j].0 {
                    best[j] = (d, next);
                }
            }
        }
    }

    if m > edges.len() {
        let mut candidates: Vec<Edge> = Vec::new();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        for a in 0..n {
            order.clear();
            order.extend((0..n).filter(|&b| b != a));
            let k = NEAREST.min(order.len());
            order.select_nth_unstable_by(k - 1, |&x, &y| dist(a, x).total_cmp(&dist(a, y)));
            candidates.extend(order[..k].iter().map(|&b| Edge::new(a, b)));
        }
        candidates.sort_unstable();
        candidates.dedup();
        candidates.shuffle(&mut rng);
        let mut present: std::collections::HashSet<Edge> = edges.iter().copied().collect();
        for e in candidates {
            if edges.len() == m {
                break;
            }
            if present.insert(e) {
                edges.push(e);
            }
        }
        if edges.len() < m {
            return Err(Error::Domain(format!(
                "only {} near-neighbor lines available for {m} requested",
                edges.len()
            )));
        }
    }
    Grid::new(n, edges.into_iter().map(|e| (e.u, e.v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_are_connected_and_acyclic() {
        for seed in 0..10 {
            let g = random_tree(25, seed).unwrap();
            assert_eq!(g.edge_count(), 24);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn connected_graphs_hit_the_edge_count() {
        for seed in 0..10 {
            let g = random_connected(8, 12, seed).unwrap();
            assert_eq!(g.edge_count(), 12);
            assert!(g.is_connected());
        }
        assert_eq!(random_connected(5, 10, 0).unwrap().edge_count(), 10);
        assert!(random_connected(5, 11, 0).is_err());
        assert!(random_connected(5, 3, 0).is_err());
    }

    #[test]
    fn geometric_grid_is_reproducible() {
        let a = geometric_grid(118, 179, 4).unwrap();
        assert_eq!(a, geometric_grid(118, 179, 4).unwrap());
        assert_eq!(a.edge_count(), 179);
        assert!(a.is_connected());
        assert_ne!(a, geometric_grid(118, 179, 5).unwrap());
    }

    #[test]
    fn single_node() {
        let g = geometric_grid(1, 0, 0).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }
}
