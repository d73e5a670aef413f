//! Config-driven experiments: load a TOML run description, execute every seed, write
//! logs, metric CSVs and a manifest, and summarize finished runs.

mod config;
mod execute;
mod manifest;
mod summarize;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{parse_controller_mix, ControllerCount, Overrides, RunConfig};
pub use execute::{
    run, run_with_setup, RunOutcome, AGENT_LOG, CALL_LOG, FOOD_FILE, HEADINGS_FILE, MANIFEST_FILE, PAIRWISE_FILE,
    POSITIONS_FILE, SEARCHES_FILE, TRIPS_FILE,
};
pub use manifest::{RunManifest, RunStatus, SeedManifest};
pub use summarize::{summarize, RunSummary, SummaryLine, SUMMARY_FILE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("config key {key:?}: {message}")]
    Config { key: String, message: String },
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Setup(#[from] crate::llm::SetupError),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricsError),
    #[error("no runs found in {0}")]
    NoRuns(PathBuf),
}
