//! Edge betweenness via Brandes' accumulation, unweighted.
//!
//! For every source `s` a BFS counts shortest paths `sigma`, then the
//! backward pass credits each edge `(v, w)` on a shortest path with
//! `sigma[v] / sigma[w] * (1 + delta[w])`. Summing over all sources counts
//! each unordered pair twice, so the totals are halved.

use std::collections::{BTreeMap, VecDeque};

use super::{Edge, Grid};

pub fn edge_betweenness(grid: &Grid) -> BTreeMap<Edge, f64> {
    let n = grid.node_count();
    let mut score = vec![0.0_f64; grid.edge_count()];

    let mut sigma = vec![0.0_f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0_f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    for s in 0..n {
        if grid.degree(s) == 0 {
            continue;
        }
        sigma.iter_mut().for_each(|x| *x = 0.0);
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        delta.iter_mut().for_each(|x| *x = 0.0);
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in grid.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }

        for &w in order.iter().rev() {
            for &v in grid.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    let credit = sigma[v] / sigma[w] * (1.0 + delta[w]);
                    let idx = grid
                        .edge_index(Edge::new(v, w))
                        .expect("neighbor lists match the edge set");
                    score[idx] += credit;
                    delta[v] += credit;
                }
            }
        }
    }

    grid.edges()
        .iter()
        .zip(score)
        .map(|(&e, s)| (e, s / 2.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_four() {
        let p4 = Grid::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = edge_betweenness(&p4);
        assert_eq!(b[&Edge::new(1, 2)], 4.0);
        assert_eq!(b[&Edge::new(0, 1)], 3.0);
        assert_eq!(b[&Edge::new(2, 3)], 3.0);
    }

    #[test]
    fn triangle_is_uniform() {
        let k3 = Grid::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let b = edge_betweenness(&k3);
        assert!(b.values().all(|&s| s == 1.0));
    }

    #[test]
    fn disjoint_pairs() {
        let g = Grid::new(4, [(0, 1), (2, 3)]).unwrap();
        let b = edge_betweenness(&g);
        assert_eq!(b.values().copied().collect::<Vec<_>>(), vec![1.0, 1.0]);
    }

    #[test]
    fn square_splits_paths_between_routes() {
        let c4 = Grid::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let b = edge_betweenness(&c4);
        // one adjacent pair (1.0) plus half of each of the two opposite pairs
        assert!(b.values().all(|&s| (s - 2.0).abs() < 1e-12));
    }
}
