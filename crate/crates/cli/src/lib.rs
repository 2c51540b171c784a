//! Experiment runner for the central spin simulator: JSON configurations,
//! named presets for every figure, and CSV output.

pub mod config;
pub mod csv;
pub mod error;
pub mod presets;
pub mod runner;

pub use config::ExperimentConfig;
pub use error::CliError;
pub use runner::{run, run_with, TimeSeries};

use std::path::Path;

/// Runs `config` and returns the full CSV text.
pub fn run_to_csv(config: &ExperimentConfig) -> Result<String, CliError> {
    let series = run(config)?;
    Ok(csv::render(config, &series))
}

/// Runs `config` and writes the CSV to `path`.
pub fn run_to_file(config: &ExperimentConfig, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, run_to_csv(config)?)?;
    Ok(())
}
