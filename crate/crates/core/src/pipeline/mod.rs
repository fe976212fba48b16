//! Configuration, sweep orchestration and artefact emission.

pub mod config;
pub mod grid;
pub mod output;
pub mod plots;
pub mod sweep;

pub use config::{GridConfig, MediumConfig, Precision, SweepConfig};
pub use grid::{build_grid, typifying_frequencies};
pub use output::write_artifacts;
pub use sweep::{run_sweep, run_sweep_with, SweepArtifacts, SweepRow, FAILURE_BUDGET};
