use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::RunError;
use crate::ants::AntParams;
use crate::flock::FlockParams;
use crate::llm::{ControllerKind, LlmEndpointConfig, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerCount {
    pub kind: ControllerKind,
    pub count: usize,
}

/// One experiment: a scenario, a controller mix and the seeds to run it with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub steps: u64,
    pub population: usize,
    pub controllers: Vec<ControllerCount>,
    /// Defaults to the deployed template of the scenario.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt_template: Option<String>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub ants: AntParams,
    #[serde(default)]
    pub flocking: FlockParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub llm: Option<LlmEndpointConfig>,
}

/// Command-line overrides; each one replaces the matching file key.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub controller_mix: Option<String>,
    pub template: Option<String>,
}

/// Parses `rule_based:25,scripted_oracle:5`.
pub fn parse_controller_mix(spec: &str) -> Result<Vec<ControllerCount>, RunError> {
    let bad = |msg: String| RunError::Config { key: "controller-mix".into(), message: msg };
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (kind, count) = item
                .split_once(':')
                .ok_or_else(|| bad(format!("expected kind:count, got {item:?}")))?;
            Ok(ControllerCount {
                kind: kind.trim().parse().map_err(bad)?,
                count: count.trim().parse().map_err(|_| bad(format!("bad count in {item:?}")))?,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| if v.is_empty() { Err(bad("empty mix".into())) } else { Ok(v) })
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config { key: error_key(&e), message: e.message().to_string() })
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        Self::from_toml(&text)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<(), RunError> {
        if let Some(seed) = o.seed {
            self.seeds = vec![seed];
        }
        if let Some(mix) = &o.controller_mix {
            self.controllers = parse_controller_mix(mix)?;
            self.population = self.controllers.iter().map(|c| c.count).sum();
        }
        if let Some(t) = &o.template {
            self.prompt_template = Some(t.clone());
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let fail = |key: &str, message: String| Err(RunError::Config { key: key.into(), message });
        if self.steps == 0 {
            return fail("steps", "must be positive".into());
        }
        if self.population == 0 {
            return fail("population", "must be positive".into());
        }
        let total: usize = self.controllers.iter().map(|c| c.count).sum();
        if total != self.population {
            return fail("controllers", format!("counts sum to {total}, population is {}", self.population));
        }
        if self.seeds.is_empty() {
            return fail("seeds", "at least one seed is required".into());
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(s) = self.seeds.iter().find(|s| !seen.insert(**s)) {
            return fail("seeds", format!("seed {s} is listed twice"));
        }
        let remote = self.kinds().contains(&ControllerKind::LlmRemote);
        match &self.llm {
            None if remote => return fail("llm", "required when any controller is llm_remote".into()),
            Some(l) => l.validate().or_else(|m| fail("llm", m))?,
            None => {}
        }
        match self.scenario {
            Scenario::Ants => self.ants.validate().or_else(|m| fail("ants", m))?,
            Scenario::Flocking => self.flocking.validate().or_else(|m| fail("flocking", m))?,
        }
        self.template().map(|_| ())
    }

    /// Controller of each agent, in id order.
    pub fn kinds(&self) -> Vec<ControllerKind> {
        self.controllers.iter().flat_map(|c| std::iter::repeat_n(c.kind, c.count)).collect()
    }

    pub fn template(&self) -> Result<&'static crate::llm::PromptTemplate, RunError> {
        match &self.prompt_template {
            Some(name) => crate::llm::templates::lookup(name, Some(self.scenario)).map_err(|e| RunError::Config {
                key: "prompt_template".into(),
                message: e.to_string(),
            }),
            None => Ok(crate::llm::templates::deployed(self.scenario)),
        }
    }

    pub fn endpoint(&self) -> LlmEndpointConfig {
        self.llm.clone().unwrap_or_default()
    }

    /// Hex SHA-256 of the canonical JSON form (object keys sorted), so the digest does not
    /// depend on key order in the file.
    pub fn digest(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        hex::encode(Sha256::digest(value.to_string().as_bytes()))
    }
}

fn error_key(e: &toml::de::Error) -> String {
    let msg = e.message();
    // "unknown field `foo`, expected ..." / "missing field `bar`"
    msg.split('`').nth(1).map_or_else(|| "config".to_string(), str::to_string)
}
