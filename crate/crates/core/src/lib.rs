//! Streaming Spearman and Kendall tau-b correlation.
//!
//! Observations are binned onto a fixed grid of cutpoints and counted in an
//! `m1 x m2` matrix ([`CountSketch`]). Rank correlations of the binned data
//! are read off the matrix in `O(m1 * m2)` time, independent of how many
//! observations have been seen, and updating the matrix costs two binary
//! searches. Sliding windows are supported by evicting the oldest cell.
//!
//! ```
//! use std::sync::Arc;
//! use npcorr::{CorrelationKind, Correlator, CutpointGrid, StreamConfig};
//!
//! let grid = Arc::new(CutpointGrid::normal_quantiles(30));
//! let config = StreamConfig::all_past(&[CorrelationKind::Spearman]).with_gap(100);
//! let mut driver = Correlator::new(grid, config).unwrap();
//! for i in 0..1000 {
//!     let x = (i as f64 * 0.37).sin();
//!     if let Some(record) = driver.step(x, x + 0.1 * (i as f64).cos()) {
//!         println!("t={} {:?}", record.t, record.estimates);
//!     }
//! }
//! ```
//!
//! [`oracles`] holds exact batch implementations used as ground truth.
//! [`simgen`] generates the synthetic streams used in the accuracy checks.

pub mod error;
pub mod estimators;
pub mod exec;
pub mod grid;
pub mod oracles;
pub mod simgen;
pub mod stream;

pub use error::{Axis, Error, Result};
pub use estimators::{
    kendall_from_sketch, spearman_from_sketch, tally_from_sketch, CorrelationEstimate, CorrelationKind,
    KendallTally,
};
pub use exec::Execution;
pub use grid::{Cell, CountSketch, CutpointGrid};
pub use oracles::PearsonState;
pub use stream::{
    ingest_sharded, run_pairs, run_stream, Correlator, EmissionRecord, ObservationWindow, StreamConfig,
    WindowMode,
};
