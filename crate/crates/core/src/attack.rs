//! Line-removal attacks that lower the Perron root `β_A` of the grid.
//!
//! Removing lines can only lower `β_A`, and a lower `β_A` lowers the first
//! fragmentation threshold `1 - 1/β_A`, so the adversary wants it small.
//! Finding the best `k` lines is NP-hard. The planners here are:
//!
//! * eigen-perturbation: deleting `(i, j)` lowers `β_A` by about
//!   `2 u(i) u(j)` (and by at most that much), where `u` is the unit Perron
//!   vector. Iterative mode recomputes `u` after each deletion; single-shot
//!   mode ranks everything from one `u`.
//! * trace greedy: `trace(A^2r)` counts closed walks of length `2r`, is
//!   supermodular in the edge set and is dominated by `β_A^2r` for large `r`.
//!   Each round deletes the line minimizing it, compared in the log domain.
//! * baselines: uniformly random lines, and lines in decreasing edge
//!   betweenness.
//!
//! Ties are broken lexicographically by edge everywhere, with scores closer
//! than [`TIE_TOL`] (relative) treated as equal.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_betweenness, Edge, Grid};
use crate::spectral::{
    leading_eigenpair_with, log_sum_of_powers, symmetric_spectrum, PowerOptions, SpectralEstimate,
};

pub const TIE_TOL: f64 = 1e-12;
pub const DEFAULT_POWER: u32 = 20;
/// Largest number of subsets the exhaustive oracle will examine.
pub const EXHAUSTIVE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    EigenIterative,
    EigenSingleShot,
    TraceGreedy,
    Random,
    Betweenness,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::EigenIterative => "eigen_iterative",
            Scheme::EigenSingleShot => "eigen_single_shot",
            Scheme::TraceGreedy => "trace_greedy",
            Scheme::Random => "random",
            Scheme::Betweenness => "betweenness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackTrace {
    pub scheme: Scheme,
    pub removed: Vec<Edge>,
    /// `β_A` before any removal, then after each one.
    pub beta_trajectory: Vec<f64>,
    pub params: BTreeMap<String, String>,
    /// Fewer than the requested number of lines were left to remove.
    pub exhausted: bool,
}

impl AttackTrace {
    pub const CSV_HEADER: &'static str = "step,edge_u,edge_v,beta_after";

    pub fn final_beta(&self) -> f64 {
        *self
            .beta_trajectory
            .last()
            .expect("trajectory holds the initial value")
    }

    /// Step 0 carries the unattacked `β_A` and empty endpoints.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        out.push_str(&format!("0,,,{}\n", self.beta_trajectory[0]));
        for (step, (e, beta)) in self
            .removed
            .iter()
            .zip(&self.beta_trajectory[1..])
            .enumerate()
        {
            out.push_str(&format!("{},{},{},{}\n", step + 1, e.u, e.v, beta));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

/// Perron pair of the grid adjacency, optionally warm-started.
fn perron(grid: &Grid, start: Option<&[f64]>) -> Result<SpectralEstimate> {
    leading_eigenpair_with(&grid.adjacency_operator(), start, &PowerOptions::default())
}

pub fn largest_eigenvalue(grid: &Grid) -> Result<f64> {
    Ok(perron(grid, None)?.value)
}

fn is_tied(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= TIE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Lexicographically smallest edge among those tied for the maximum.
fn pick_max(scored: &[(Edge, f64)]) -> Option<Edge> {
    let best = scored
        .iter()
        .map(|&(_, s)| s)
        .fold(f64::NEG_INFINITY, f64::max);
    scored
        .iter()
        .filter(|&&(_, s)| is_tied(s, best))
        .map(|&(e, _)| e)
        .min()
}

fn pick_min(scored: &[(Edge, f64)]) -> Option<Edge> {
    let best = scored.iter().map(|&(_, s)| s).fold(f64::INFINITY, f64::min);
    scored
        .iter()
        .filter(|&&(_, s)| is_tied(s, best))
        .map(|&(e, _)| e)
        .min()
}

fn scores_from_vector(grid: &Grid, u: &[f64]) -> Vec<(Edge, f64)> {
    grid.edges()
        .iter()
        .map(|&e| (e, 2.0 * u[e.u] * u[e.v]))
        .collect()
}

/// `2 u(i) u(j)` for every line, from the current Perron vector.
pub fn eigen_perturbation_scores(grid: &Grid) -> Result<BTreeMap<Edge, f64>> {
    if grid.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let est = perron(grid, None)?;
    Ok(scores_from_vector(grid, &est.vector).into_iter().collect())
}

/// Applies deletions one at a time and records `β_A` after each.
struct Recorder {
    grid: Grid,
    estimate: SpectralEstimate,
    removed: Vec<Edge>,
    trajectory: Vec<f64>,
}

impl Recorder {
    fn new(grid: &Grid) -> Result<Self> {
        let estimate = perron(grid, None)?;
        Ok(Recorder {
            grid: grid.clone(),
            trajectory: vec![estimate.value],
            estimate,
            removed: Vec::new(),
        })
    }

    fn remove(&mut self, edge: Edge) -> Result<()> {
        self.grid = self.grid.remove_edge(edge)?;
        self.estimate = perron(&self.grid, Some(&self.estimate.vector))?;
        let prev = *self.trajectory.last().expect("nonempty");
        // Deletion cannot raise the Perron root; drop solver jitter.
        self.trajectory.push(self.estimate.value.min(prev));
        self.removed.push(edge);
        Ok(())
    }

    fn finish(self, scheme: Scheme, k: usize, params: BTreeMap<String, String>) -> AttackTrace {
        AttackTrace {
            scheme,
            exhausted: self.removed.len() < k,
            removed: self.removed,
            beta_trajectory: self.trajectory,
            params,
        }
    }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Recompute `u`, delete the top-scoring line, repeat `k` times.
pub fn attack_eigen_iterative(grid: &Grid, k: usize) -> Result<AttackTrace> {
    let mut rec = Recorder::new(grid)?;
    for _ in 0..k {
        let scores = scores_from_vector(&rec.grid, &rec.estimate.vector);
        let Some(edge) = pick_max(&scores) else { break };
        rec.remove(edge)?;
    }
    Ok(rec.finish(
        Scheme::EigenIterative,
        k,
        params(&[("recompute", "true".into())]),
    ))
}

/// Rank all lines from a single Perron vector and delete the top `k`.
pub fn attack_eigen_single_shot(grid: &Grid, k: usize) -> Result<AttackTrace> {
    let mut rec = Recorder::new(grid)?;
    let mut scores = scores_from_vector(grid, &rec.estimate.vector);
    for _ in 0..k {
        let Some(edge) = pick_max(&scores) else { break };
        scores.retain(|&(e, _)| e != edge);
        rec.remove(edge)?;
    }
    Ok(rec.finish(
        Scheme::EigenSingleShot,
        k,
        params(&[("recompute", "false".into())]),
    ))
}

/// Natural log of `trace(A^power)` for the grid minus one line.
fn log_trace_without(base: &crate::spectral::DenseMatrix, edge: Edge, power: u32) -> Result<f64> {
    let mut m = base.clone();
    m.set(edge.u, edge.v, 0.0);
    m.set(edge.v, edge.u, 0.0);
    Ok(log_sum_of_powers(&symmetric_spectrum(&m)?, power))
}

/// Greedily delete the line that minimizes `trace(A^power)`.
pub fn attack_trace_greedy(grid: &Grid, k: usize, power: u32) -> Result<AttackTrace> {
    if power < 2 || !power.is_multiple_of(2) {
        return Err(Error::InvalidPower(power));
    }
    let mut rec = Recorder::new(grid)?;
    for _ in 0..k {
        if rec.grid.edge_count() == 0 {
            break;
        }
        let base = rec.grid.dense_adjacency();
        let scored = rec
            .grid
            .edges()
            .par_iter()
            .map(|&e| Ok((e, log_trace_without(&base, e, power)?)))
            .collect::<Result<Vec<_>>>()?;
        let edge = pick_min(&scored).expect("at least one candidate");
        rec.remove(edge)?;
    }
    Ok(rec.finish(
        Scheme::TraceGreedy,
        k,
        params(&[("power", power.to_string())]),
    ))
}

/// `k` distinct lines drawn uniformly from a seeded stream.
pub fn attack_random(grid: &Grid, k: usize, seed: u64) -> Result<AttackTrace> {
    let mut rec = Recorder::new(grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let take = k.min(grid.edge_count());
    let picks = rand::seq::index::sample(&mut rng, grid.edge_count(), take);
    for idx in picks.iter() {
        rec.remove(grid.edges()[idx])?;
    }
    Ok(rec.finish(Scheme::Random, k, params(&[("seed", seed.to_string())])))
}

/// Delete lines in decreasing edge betweenness, scored once or after every
/// deletion.
pub fn attack_betweenness(grid: &Grid, k: usize, recompute: bool) -> Result<AttackTrace> {
    let mut rec = Recorder::new(grid)?;
    let mut scores: Vec<(Edge, f64)> = edge_betweenness(grid).into_iter().collect();
    for _ in 0..k {
        if recompute {
            scores = edge_betweenness(&rec.grid).into_iter().collect();
        }
        let Some(edge) = pick_max(&scores) else { break };
        scores.retain(|&(e, _)| e != edge);
        rec.remove(edge)?;
    }
    Ok(rec.finish(
        Scheme::Betweenness,
        k,
        params(&[("recompute", recompute.to_string())]),
    ))
}

/// Exact minimizer of `β_A` over all `k`-subsets of lines, `k <= 2`.
pub fn exhaustive_optimal_removal(grid: &Grid, k: usize) -> Result<(Vec<Edge>, f64)> {
    let m = grid.edge_count() as u64;
    let subsets = match k {
        0 => 1,
        1 => m,
        2 => m * m.saturating_sub(1) / 2,
        _ => {
            return Err(Error::Domain(format!(
                "exhaustive search supports k <= 2, got {k}"
            )))
        }
    };
    if k as u64 > m {
        return Err(Error::Domain(format!("cannot remove {k} of {m} lines")));
    }
    if subsets > EXHAUSTIVE_BUDGET {
        return Err(Error::Domain(format!(
            "{subsets} subsets exceed the exhaustive budget of {EXHAUSTIVE_BUDGET}"
        )));
    }

    let edges = grid.edges();
    let candidates: Vec<Vec<Edge>> = match k {
        0 => vec![Vec::new()],
        1 => edges.iter().map(|&e| vec![e]).collect(),
        _ => (0..edges.len())
            .flat_map(|a| (a + 1..edges.len()).map(move |b| vec![edges[a], edges[b]]))
            .collect(),
    };
    let betas = candidates
        .par_iter()
        .map(|set| largest_eigenvalue(&grid.remove_edges(set)?))
        .collect::<Result<Vec<_>>>()?;
    let best = betas.iter().copied().fold(f64::INFINITY, f64::min);
    let (set, beta) = candidates
        .into_iter()
        .zip(betas)
        .find(|&(_, b)| is_tied(b, best))
        .expect("at least one subset");
    Ok((set, beta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackConfig {
    pub scheme: Scheme,
    pub k: usize,
    pub power: u32,
    pub seed: u64,
    pub recompute: bool,
}

pub fn run_attack(grid: &Grid, config: &AttackConfig) -> Result<AttackTrace> {
    match config.scheme {
        Scheme::EigenIterative => attack_eigen_iterative(grid, config.k),
        Scheme::EigenSingleShot => attack_eigen_single_shot(grid, config.k),
        Scheme::TraceGreedy => attack_trace_greedy(grid, config.k, config.power),
        Scheme::Random => attack_random(grid, config.k, config.seed),
        Scheme::Betweenness => attack_betweenness(grid, config.k, config.recompute),
    }
}
