//! Monte Carlo disaster simulation.
//!
//! Each trial kills every node independently with probability `p0` and
//! measures the damage `N - N_s`, where `N_s` is the largest surviving
//! component. Secondary failures need no propagation loop: survivors cut off
//! from the largest component are already counted as damage.
//!
//! Trial `t` at grid index `g` draws from its own ChaCha stream keyed by
//! `(seed, g, t)`, so reports are identical for any worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::validate_p0_grid;
use crate::error::{Error, Result};
use crate::graph::components::largest_component_with;
use crate::graph::Grid;

pub const DEFAULT_TRIALS: usize = 200;

/// Base of the logarithm in the `N_s < 2 log N` fragmentation test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    E,
    Two,
}

impl LogBase {
    pub fn fragmentation_size(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            LogBase::E => 2.0 * n.ln(),
            LogBase::Two => 2.0 * n.log2(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub survivors_initial: usize,
    pub largest_component: usize,
    pub damage: usize,
    pub fragmented: bool,
}

/// Random stream for trial `trial` at grid point `point`.
pub fn trial_stream(seed: u64, point: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << 32) | (trial as u64 & 0xffff_ffff));
    rng
}

pub fn run_trial<R: Rng + ?Sized>(grid: &Grid, p0: f64, rng: &mut R) -> TrialOutcome {
    let mut scratch = Scratch::new(grid.node_count());
    run_trial_with(grid, p0, rng, LogBase::E, &mut scratch)
}

struct Scratch {
    alive: Vec<bool>,
    seen: Vec<bool>,
    stack: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            alive: vec![false; n],
            seen: vec![false; n],
            stack: Vec::new(),
        }
    }
}

fn run_trial_with<R: Rng + ?Sized>(
    grid: &Grid,
    p0: f64,
    rng: &mut R,
    base: LogBase,
    scratch: &mut Scratch,
) -> TrialOutcome {
    let n = grid.node_count();
    let mut survivors = 0;
    for flag in scratch.alive.iter_mut() {
        *flag = rng.gen::<f64>() >= p0;
        survivors += usize::from(*flag);
    }
    scratch.seen.iter_mut().for_each(|s| *s = false);
    let largest =
        largest_component_with(grid, &scratch.alive, &mut scratch.seen, &mut scratch.stack);
    TrialOutcome {
        survivors_initial: survivors,
        largest_component: largest,
        damage: n - largest,
        fragmented: (largest as f64) < base.fragmentation_size(n),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationPoint {
    pub p0: f64,
    pub mean_damage: f64,
    pub std_damage: f64,
    pub stderr: f64,
    pub frag_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub points: Vec<SimulationPoint>,
    pub trials: usize,
    pub seed: u64,
    pub log_base: LogBase,
}

impl SimulationReport {
    pub const CSV_HEADER: &'static str =
        "p0,mean_damage,std_damage,stderr,frag_fraction,trials,seed";

    pub fn p0_grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.p0).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                p.p0,
                p.mean_damage,
                p.std_damage,
                p.stderr,
                p.frag_fraction,
                self.trials,
                self.seed
            ));
        }
        out
    }
}

pub fn monte_carlo(
    grid: &Grid,
    p0_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<SimulationReport> {
    monte_carlo_with(grid, p0_grid, trials, seed, LogBase::E)
}

pub fn monte_carlo_with(
    grid: &Grid,
    p0_grid: &[f64],
    trials: usize,
    seed: u64,
    base: LogBase,
) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    validate_p0_grid(p0_grid)?;
    let n = grid.node_count();

    let outcomes: Vec<(usize, bool)> = (0..p0_grid.len() * trials)
        .into_par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, k| {
                let (g, t) = (k / trials, k % trials);
                let mut rng = trial_stream(seed, g, t);
                let o = run_trial_with(grid, p0_grid[g], &mut rng, base, scratch);
                (o.damage, o.fragmented)
            },
        )
        .collect();

    let points = p0_grid
        .iter()
        .zip(outcomes.chunks(trials))
        .map(|(&p0, chunk)| {
            let count = trials as f64;
            let mean = chunk.iter().map(|&(d, _)| d as f64).sum::<f64>() / count;
            let var = if trials > 1 {
                chunk
                    .iter()
                    .map(|&(d, _)| (d as f64 - mean).powi(2))
                    .sum::<f64>()
                    / (count - 1.0)
            } else {
                0.0
            };
            let std = var.sqrt();
            SimulationPoint {
                p0,
                mean_damage: mean,
                std_damage: std,
                stderr: std / count.sqrt(),
                frag_fraction: chunk.iter().filter(|&&(_, f)| f).count() as f64 / count,
            }
        })
        .collect();

    Ok(SimulationReport {
        points,
        trials,
        seed,
        log_base: base,
    })
}

/// Smallest grid `p0` at which at least half of the trials fragmented.
pub fn empirical_fragmentation_point(report: &SimulationReport) -> Option<f64> {
    report
        .points
        .iter()
        .find(|p| p.frag_fraction >= 0.5)
        .map(|p| p.p0)
}
