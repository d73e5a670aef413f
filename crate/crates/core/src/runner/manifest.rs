use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::RunError;
use crate::llm::PromptTemplate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Running,
    Complete,
    /// Finished, but some decisions fell back after failed model calls.
    Degraded,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedManifest {
    pub seed: u64,
    pub status: RunStatus,
    /// Per-seed files, relative to the output directory.
    pub files: Vec<String>,
    pub calls: usize,
    pub flagged_calls: usize,
    pub degraded_ticks: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// `manifest.json`: enough to reconstruct an offline run from the code version and seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config_digest: String,
    pub code_version: String,
    /// Unix seconds.
    pub started_at: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finished_at: Option<u64>,
    pub status: RunStatus,
    pub config: RunConfig,
    /// Template name to SHA-256 of its system text.
    pub template_hashes: BTreeMap<String, String>,
    /// Merged metric files.
    pub outputs: Vec<String>,
    pub seeds: Vec<SeedManifest>,
}

pub fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

impl RunManifest {
    pub fn new(config: &RunConfig, template: &PromptTemplate) -> Self {
        let mut template_hashes = BTreeMap::new();
        if config.kinds().iter().any(|k| k.uses_prompt()) {
            template_hashes.insert(template.name.to_string(), template.system_hash());
        }
        Self {
            config_digest: config.digest(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            started_at: unix_now(),
            finished_at: None,
            status: RunStatus::Running,
            config: config.clone(),
            template_hashes,
            outputs: Vec::new(),
            seeds: Vec::new(),
        }
    }

    pub fn finish(&mut self, at: u64) {
        self.finished_at = Some(at);
        self.status = if self.seeds.iter().any(|s| s.status == RunStatus::Failed) {
            RunStatus::Failed
        } else if self.seeds.iter().any(|s| s.status == RunStatus::Degraded) {
            RunStatus::Degraded
        } else {
            RunStatus::Complete
        };
    }

    pub fn write(&self, path: &Path) -> Result<(), RunError> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n").map_err(|e| RunError::Io { path: path.to_path_buf(), message: e.to_string() })
    }

    pub fn read(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        serde_json::from_str(&text).map_err(|e| RunError::Io { path: path.to_path_buf(), message: e.to_string() })
    }
}
