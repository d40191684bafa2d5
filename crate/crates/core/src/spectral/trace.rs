use serde::Serialize;

use super::{symmetric_spectrum, DenseMatrix};
use crate::error::{Error, Result};

/// Natural log of `trace(A^power)` for an even `power`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogTrace {
    /// `-inf` when every eigenvalue is zero.
    pub log_value: f64,
    pub power: u32,
}

/// `log Σ β_i^power` from the spectrum, combined in the log domain so that
/// large powers never overflow. Exact zero eigenvalues are skipped.
pub fn log_trace_power(matrix: &DenseMatrix, power: u32) -> Result<LogTrace> {
    if power < 2 || !power.is_multiple_of(2) {
        return Err(Error::InvalidPower(power));
    }
    let spectrum = symmetric_spectrum(matrix)?;
    Ok(LogTrace {
        log_value: log_sum_of_powers(&spectrum, power),
        power,
    })
}

pub(crate) fn log_sum_of_powers(spectrum: &[f64], power: u32) -> f64 {
    let p = f64::from(power);
    let logs: Vec<f64> = spectrum
        .iter()
        .filter(|b| **b != 0.0)
        .map(|b| p * b.abs().ln())
        .collect();
    let Some(max) = logs.iter().copied().reduce(f64::max) else {
        return f64::NEG_INFINITY;
    };
    max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln()
}
