//! Perron root of a nonnegative operator by shifted power iteration.
//!
//! Iterating `A + sI` instead of `A` removes the tie between `β` and `-β`
//! (bipartite graphs) and between `β` and the other roots of unity times `β`
//! (directed cycles): every eigenvalue other than the Perron root satisfies
//! `|λ + s| < β + s`. Acceptance is on the Rayleigh residual
//! `‖Ax - βx‖∞`, not on the change between iterates.
//!
//! The shift hides nilpotent operators (the shifted iterate never vanishes),
//! so an unshifted probe runs alongside for the first `n + 1` steps; a
//! nonnegative matrix with `A^k 1 = 0` is nilpotent and its Perron root is 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::LinearOperator;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

const COLLAPSE: f64 = 1e-14;

#[derive(Debug, Clone, Copy)]
pub struct PowerOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub shift: f64,
    /// Restarts from seeded random positive vectors when the residual stalls.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            shift: 1.0,
            restarts: 3,
            seed: 0x5eed_1e55,
        }
    }
}

/// Leading eigenpair of a nonnegative matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub value: f64,
    /// Unit 2-norm, entrywise nonnegative.
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    /// Set when the operator was detected to be nilpotent.
    pub zero: bool,
}

pub fn leading_eigenpair<A>(op: &A, tol: f64, max_iter: usize) -> Result<SpectralEstimate>
where
    A: LinearOperator + ?Sized,
{
    let opts = PowerOptions {
        tol,
        max_iter,
        ..PowerOptions::default()
    };
    leading_eigenpair_with(op, None, &opts)
}

/// Power iteration with explicit options and an optional positive warm start.
pub fn leading_eigenpair_with<A>(
    op: &A,
    start: Option<&[f64]>,
    opts: &PowerOptions,
) -> Result<SpectralEstimate>
where
    A: LinearOperator + ?Sized,
{
    let n = op.dim();
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    if n == 0 {
        return Ok(SpectralEstimate {
            value: 0.0,
            vector: Vec::new(),
            iterations: 0,
            residual: 0.0,
            zero: true,
        });
    }

    let mut x = match start {
        Some(s) if s.len() == n && s.iter().all(|&v| v >= 0.0) && s.iter().any(|&v| v > 0.0) => {
            // Mixing in a little of the all-ones vector keeps every entry positive.
            let floor = 1e-3 / (n as f64).sqrt();
            s.iter().map(|&v| v + floor).collect()
        }
        _ => vec![1.0; n],
    };
    normalize(&mut x);

    let mut y = vec![0.0; n];
    let mut probe = vec![1.0; n];
    let mut probe_next = vec![0.0; n];
    let mut probing = true;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut restarts_left = opts.restarts;
    let window = (opts.max_iter / 50).max(500);
    let mut stall_best = f64::INFINITY;
    let mut stall_since = 0;

    let mut best = (f64::INFINITY, 0.0, x.clone());

    for it in 1..=opts.max_iter {
        op.apply(&x, &mut y);
        let value = dot(&x, &y);
        let residual = x
            .iter()
            .zip(&y)
            .map(|(xi, yi)| (yi - value * xi).abs())
            .fold(0.0, f64::max);

        if probing {
            op.apply(&probe, &mut probe_next);
            let scale = probe_next.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            if scale < COLLAPSE {
                return Ok(SpectralEstimate {
                    value: 0.0,
                    vector: x,
                    iterations: it,
                    residual: 0.0,
                    zero: true,
                });
            }
            for (p, q) in probe.iter_mut().zip(&probe_next) {
                *p = q / scale;
            }
            probing = it <= n;
        }

        if residual < best.0 {
            best = (residual, value, x.clone());
        }
        if residual <= opts.tol {
            return Ok(SpectralEstimate {
                value: value.max(0.0),
                vector: x,
                iterations: it,
                residual,
                zero: false,
            });
        }

        if residual < 0.99 * stall_best {
            stall_best = residual;
            stall_since = it;
        } else if it - stall_since > window && restarts_left > 0 {
            restarts_left -= 1;
            stall_best = f64::INFINITY;
            stall_since = it;
            for xi in x.iter_mut() {
                *xi = rng.gen_range(0.5..1.5);
            }
            normalize(&mut x);
            continue;
        }

        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi + opts.shift * *xi;
        }
        normalize(&mut x);
    }

    Err(Error::NotConverged {
        iterations: opts.max_iter,
        residual: best.0,
        estimate: best.1,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}
