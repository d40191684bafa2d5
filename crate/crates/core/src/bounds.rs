//! Fragmentation thresholds and the failure-count upper bound.
//!
//! The first threshold comes from the Perron root of the grid adjacency
//! `A`, the second from the modified graph's `A_E`: beyond
//! `1 - 1/β` the survival recursion contracts to zero.
//!
//! The failure bound needs, for every directed line `v_ij`, the limiting
//! probability that `i` is *not* connected to the surviving core through
//! `j`. That deficit `x` is the fixed point of
//!
//! ```text
//! x = p0 * 1 + (1 - p0) * D_E^-1 A_E x
//! ```
//!
//! and the bound is `p0 N + (1 - p0) Σ_i Σ_{j ~ i} x_ij / d_i`.
//!
//! `D_E^-1` is undefined on modified nodes with no successor (lines into a
//! leaf). [`DeadEndRule`] picks how those rows are read.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Grid;
use crate::nonbacktracking::{build_modified_graph, ModifiedGraph};
use crate::spectral::{leading_eigenpair, DEFAULT_MAX_ITER, DEFAULT_TOL};

pub const DEFICIT_TOL: f64 = 1e-12;
pub const DEFICIT_MAX_ITER: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// `max(0, 1 - 1/β_A)`.
    pub first: f64,
    /// `max(0, 1 - 1/β_AE)`.
    pub second: f64,
    pub beta_a: f64,
    pub beta_ae: f64,
}

/// Maps a Perron root to its threshold. Roots below 1 certify nothing.
pub fn threshold_from_beta(beta: f64) -> f64 {
    if beta <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / beta).clamp(0.0, 1.0)
    }
}

pub fn thresholds(grid: &Grid) -> Result<Thresholds> {
    let mg = build_modified_graph(grid)?;
    thresholds_with(grid, &mg)
}

/// Same as [`thresholds`] with a prebuilt modified graph.
pub fn thresholds_with(grid: &Grid, mg: &ModifiedGraph) -> Result<Thresholds> {
    if grid.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let beta_a =
        leading_eigenpair(&grid.adjacency_operator(), DEFAULT_TOL, DEFAULT_MAX_ITER)?.value;
    let beta_ae = leading_eigenpair(&mg.adjacency(), DEFAULT_TOL, DEFAULT_MAX_ITER)?.value;
    Ok(Thresholds {
        first: threshold_from_beta(beta_a),
        second: threshold_from_beta(beta_ae),
        beta_a,
        beta_ae,
    })
}

/// Reading of a modified node with no successor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeadEndRule {
    /// Deficit fixed at 1: a line into a leaf cannot reach anything past it.
    /// Under this rule the fixed point is all ones for every `p0 > 0`.
    #[default]
    Pinned,
    /// The row of `D_E^-1 A_E` is zero, so the deficit is just `p0`.
    InitialOnly,
}

/// Per-modified-node deficit `1 - λ^E_∞`, in modified-graph position order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeDeficit {
    pub values: Vec<f64>,
    pub p0: f64,
    pub iterations: usize,
}

fn check_p0(p0: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(Error::Domain(format!("p0 must lie in [0, 1], got {p0}")));
    }
    Ok(())
}

pub fn edge_survival_deficit(grid: &Grid, p0: f64) -> Result<EdgeDeficit> {
    check_p0(p0)?;
    let mg = build_modified_graph(grid)?;
    edge_survival_deficit_with(&mg, p0, DeadEndRule::Pinned)
}

/// Jacobi fixed-point solve of the deficit system.
///
/// For `p0 > 0` the map is a contraction with factor `1 - p0` in the
/// ∞-norm and the start vector does not matter; it starts from all ones.
/// At `p0 = 0` the map is only nonexpansive: starting from zero yields the
/// minimal fixed point, i.e. zero on closed classes with no dead end.
pub fn edge_survival_deficit_with(
    mg: &ModifiedGraph,
    p0: f64,
    rule: DeadEndRule,
) -> Result<EdgeDeficit> {
    check_p0(p0)?;
    let m = mg.node_count();
    let dead_end = match rule {
        DeadEndRule::Pinned => 1.0,
        DeadEndRule::InitialOnly => p0,
    };
    let start = if p0 > 0.0 { 1.0 } else { 0.0 };
    let mut x: Vec<f64> = (0..m)
        .map(|p| {
            if mg.out_degree(p) == 0 {
                dead_end
            } else {
                start
            }
        })
        .collect();
    let mut next = x.clone();
    let keep = 1.0 - p0;

    for it in 1..=DEFICIT_MAX_ITER {
        let mut change: f64 = 0.0;
        for (p, out) in next.iter_mut().enumerate() {
            let succ = mg.successors(p);
            if succ.is_empty() {
                continue;
            }
            let mean = succ.iter().map(|&q| x[q]).sum::<f64>() / succ.len() as f64;
            let value = (p0 + keep * mean).clamp(0.0, 1.0);
            change = change.max((value - x[p]).abs());
            *out = value;
        }
        std::mem::swap(&mut x, &mut next);
        if change <= DEFICIT_TOL {
            return Ok(EdgeDeficit {
                values: x,
                p0,
                iterations: it,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: DEFICIT_MAX_ITER,
        residual: f64::NAN,
        estimate: x.iter().sum::<f64>() / m.max(1) as f64,
    })
}

pub fn failure_upper_bound(grid: &Grid, p0: f64) -> Result<f64> {
    check_p0(p0)?;
    if grid.edge_count() == 0 {
        return Ok(grid.node_count() as f64);
    }
    let mg = build_modified_graph(grid)?;
    failure_upper_bound_with(grid, &mg, p0, DeadEndRule::Pinned)
}

/// Isolated nodes count as failed with probability 1.
pub fn failure_upper_bound_with(
    grid: &Grid,
    mg: &ModifiedGraph,
    p0: f64,
    rule: DeadEndRule,
) -> Result<f64> {
    check_p0(p0)?;
    let deficit = edge_survival_deficit_with(mg, p0, rule)?;
    let n = grid.node_count();
    let mut through_lines = 0.0;
    for i in 0..n {
        let nbrs = grid.neighbors(i);
        if nbrs.is_empty() {
            through_lines += 1.0;
            continue;
        }
        let sum: f64 = nbrs
            .iter()
            .map(|&j| deficit.values[mg.position(i, j).expect("line has a modified node")])
            .sum();
        through_lines += sum / nbrs.len() as f64;
    }
    let bound = p0 * n as f64 + (1.0 - p0) * through_lines;
    Ok(bound.clamp(0.0, n as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureBoundCurve {
    pub p0_grid: Vec<f64>,
    pub bound: Vec<f64>,
    pub thresholds: Thresholds,
    pub rule: DeadEndRule,
}

impl FailureBoundCurve {
    pub const CSV_HEADER: &'static str = "p0,bound_failures,first_threshold,second_threshold";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for (p0, b) in self.p0_grid.iter().zip(&self.bound) {
            out.push_str(&format!(
                "{p0},{b},{},{}\n",
                self.thresholds.first, self.thresholds.second
            ));
        }
        out
    }
}

/// Checks that a p0 grid is nonempty, inside [0, 1] and ascending.
pub fn validate_p0_grid(p0_grid: &[f64]) -> Result<()> {
    if p0_grid.is_empty() {
        return Err(Error::Domain("p0 grid is empty".into()));
    }
    for &p in p0_grid {
        check_p0(p)?;
    }
    if p0_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("p0 grid must be strictly ascending".into()));
    }
    Ok(())
}

pub fn bound_curve(grid: &Grid, p0_grid: &[f64]) -> Result<FailureBoundCurve> {
    bound_curve_with(grid, p0_grid, DeadEndRule::Pinned)
}

pub fn bound_curve_with(
    grid: &Grid,
    p0_grid: &[f64],
    rule: DeadEndRule,
) -> Result<FailureBoundCurve> {
    validate_p0_grid(p0_grid)?;
    let mg = build_modified_graph(grid)?;
    let thresholds = thresholds_with(grid, &mg)?;
    let bound = p0_grid
        .par_iter()
        .map(|&p0| failure_upper_bound_with(grid, &mg, p0, rule))
        .collect::<Result<Vec<_>>>()?;
    Ok(FailureBoundCurve {
        p0_grid: p0_grid.to_vec(),
        bound,
        thresholds,
        rule,
    })
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Probability that a group of `group_size` nodes with independent
/// Gaussian(`mu`, `sigma²`) net capacities covers its total load:
/// `Φ(mu √group_size / sigma)`.
pub fn load_service_probability(mu: f64, sigma: f64, group_size: u64) -> Result<f64> {
    if mu.is_nan() || mu < 0.0 {
        return Err(Error::Domain(format!(
            "mean capacity must be >= 0, got {mu}"
        )));
    }
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    if group_size == 0 {
        return Err(Error::Domain("group size must be positive".into()));
    }
    Ok(normal_cdf(mu * (group_size as f64).sqrt() / sigma))
}
