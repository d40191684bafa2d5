//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use gridvuln::graph::{parse_edge_list, Indexing};
use gridvuln::Grid;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> Grid {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_edge_list(&text, Indexing::Auto).expect("fixture parses")
}

pub fn complete(n: usize) -> Grid {
    Grid::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}

pub fn cycle(n: usize) -> Grid {
    Grid::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Grid {
    Grid::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn star(leaves: usize) -> Grid {
    Grid::new(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
}

/// Graph on `n` nodes whose edge set is given by the bits of `mask` over the
/// lexicographic list of all pairs.
pub fn from_mask(n: usize, mask: u64) -> Grid {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Grid::new(
        n,
        pairs
            .into_iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, p)| p),
    )
    .unwrap()
}

/// Number of closed walks of length `len`, by integer matrix powers.
pub fn closed_walks(grid: &Grid, len: u32) -> u128 {
    let n = grid.node_count();
    let a: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| grid.adjacency(i, j) as u128).collect())
        .collect();
    let mut p: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| u128::from(i == j)).collect())
        .collect();
    for _ in 0..len {
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| p[i][k] * a[k][j]).sum())
                    .collect()
            })
            .collect();
    }
    (0..n).map(|i| p[i][i]).sum()
}

/// BFS distances and shortest-path counts from `s`.
pub fn bfs_counts(grid: &Grid, s: usize) -> (Vec<Option<usize>>, Vec<f64>) {
    let n = grid.node_count();
    let mut dist = vec![None; n];
    let mut sigma = vec![0.0; n];
    dist[s] = Some(0);
    sigma[s] = 1.0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &w in grid.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
            if dist[w] == Some(dv + 1) {
                sigma[w] += sigma[v];
            }
        }
    }
    (dist, sigma)
}

/// Edge betweenness from the pair-by-pair definition.
pub fn brute_edge_betweenness(grid: &Grid) -> Vec<f64> {
    let n = grid.node_count();
    let all: Vec<_> = (0..n).map(|s| bfs_counts(grid, s)).collect();
    grid.edges()
        .iter()
        .map(|e| {
            let mut total = 0.0;
            for s in 0..n {
                for t in s + 1..n {
                    let (ds, ss) = &all[s];
                    let Some(dst) = ds[t] else { continue };
                    let (dt, st) = &all[t];
                    for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                        if let (Some(x), Some(y)) = (ds[a], dt[b]) {
                            if x + 1 + y == dst {
                                total += ss[a] * st[b] / ss[t];
                            }
                        }
                    }
                }
            }
            total
        })
        .collect()
}

/// Sum of shortest-path lengths over connected unordered pairs.
pub fn total_distance(grid: &Grid) -> usize {
    let n = grid.node_count();
    (0..n)
        .map(|s| {
            let (d, _) = bfs_counts(grid, s);
            (s + 1..n).filter_map(|t| d[t]).sum::<usize>()
        })
        .sum()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (offset, row) in rest.iter_mut().enumerate() {
            let f = row[col] / pivot_row[col];
            if f != 0.0 {
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
                b[col + 1 + offset] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}
