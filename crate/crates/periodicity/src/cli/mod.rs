//! Config-driven experiments, series ingestion and report files behind the binary.

use thiserror::Error;

mod commands;
pub mod config;
pub mod io;
pub mod presets;

pub use commands::{
    analyze, analyze_series, coeffs, run, AnalysisOptions, CoeffListing, Report, RunOutput, TruncationBlock,
};
pub use config::ExperimentConfig;
pub use io::{read_series, IngestedSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    /// 2 for bad input, 3 for failures while computing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

/// Loads and parses a JSON config file.
pub fn load_config(path: &std::path::Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    ExperimentConfig::from_json(&text)
}
