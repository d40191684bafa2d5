//! Leading eigenpairs, symmetric spectra and log-domain walk counts.

mod jacobi;
mod operator;
mod power;
mod trace;

pub use jacobi::symmetric_spectrum;
pub use operator::{DenseMatrix, LinearOperator, SparseMatrix};
pub use power::{
    leading_eigenpair, leading_eigenpair_with, PowerOptions, SpectralEstimate, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
pub use trace::{log_trace_power, LogTrace};

pub(crate) use trace::log_sum_of_powers;
