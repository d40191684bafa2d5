//! Spectral vulnerability analysis of power-grid graphs.
//!
//! * [`graph`]: grids, parsing, components and edge betweenness.
//! * [`spectral`]: Perron roots, symmetric spectra and walk-count traces.
//! * [`nonbacktracking`]: the modified graph with one node per line direction.
//! * [`bounds`]: fragmentation thresholds and the failure-count bound.
//! * [`simulate`]: seeded Monte Carlo damage estimates.
//! * [`attack`]: line-removal planners that lower the Perron root.

pub mod attack;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod generate;
pub mod graph;
pub mod nonbacktracking;
pub mod simulate;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Edge, Grid};
