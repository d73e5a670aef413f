//! Prompt-driven controllers: templates, the chat transport, the offline oracle and the
//! retrying decision pipeline.

mod config;
mod oracle;
mod pipeline;
pub mod templates;
mod transport;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use config::{LlmEndpointConfig, RetryPolicy, BASE_URL_ENV, DEFAULT_API_KEY_ENV, DEFAULT_BASE_URL};
pub use oracle::{oracle_ant_decision, oracle_bird_decision, OracleBackend, OracleError};
pub use pipeline::{decide, CallRecord, Decision};
pub use templates::{PromptTemplate, Scenario};
pub use transport::{
    chat_completion, extract_content, BackendError, ChatBackend, ChatClient, ChatMessage, ChatRequest,
    ConfigError, TransportError,
};

/// How an agent chooses its actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControllerKind {
    /// The library model's hand-written rules.
    RuleBased,
    /// A chat model behind an OpenAI-compatible endpoint.
    LlmRemote,
    /// The offline oracle, through the full prompt / parse path.
    ScriptedOracle,
    /// The deployed prompt's rules evaluated directly, no text involved.
    DecisionTable,
}

impl ControllerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ControllerKind::RuleBased => "rule_based",
            ControllerKind::LlmRemote => "llm_remote",
            ControllerKind::ScriptedOracle => "scripted_oracle",
            ControllerKind::DecisionTable => "decision_table",
        }
    }

    /// Whether decisions go through a prompt and a [`ChatBackend`].
    pub fn uses_prompt(self) -> bool {
        matches!(self, ControllerKind::LlmRemote | ControllerKind::ScriptedOracle)
    }
}

impl std::str::FromStr for ControllerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            ControllerKind::RuleBased,
            ControllerKind::LlmRemote,
            ControllerKind::ScriptedOracle,
            ControllerKind::DecisionTable,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| format!("unknown controller kind {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SetupError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Template(#[from] templates::TemplateError),
    #[error("the scripted oracle only answers deployed templates, not {0}")]
    OracleTemplate(&'static str),
}

/// What prompt-driven agents of one simulation share.
#[derive(Clone)]
pub struct PromptSetup {
    pub template: &'static PromptTemplate,
    pub endpoint: LlmEndpointConfig,
    remote: Option<Arc<dyn ChatBackend>>,
    oracle: OracleBackend,
}

impl std::fmt::Debug for PromptSetup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PromptSetup")
            .field("template", &self.template.name)
            .field("remote", &self.remote.is_some())
            .finish_non_exhaustive()
    }
}

impl PromptSetup {
    /// Checks that `kinds` can be served: builds an HTTP client if any agent is remote,
    /// and rejects non-deployed templates for the oracle.
    pub fn new(
        template: &'static PromptTemplate,
        endpoint: LlmEndpointConfig,
        kinds: &[ControllerKind],
    ) -> Result<Self, SetupError> {
        let remote = if kinds.contains(&ControllerKind::LlmRemote) {
            Some(Arc::new(ChatClient::new(&endpoint)?) as Arc<dyn ChatBackend>)
        } else {
            None
        };
        if kinds.contains(&ControllerKind::ScriptedOracle) && !template.is_deployed() {
            return Err(SetupError::OracleTemplate(template.name));
        }
        Ok(Self { template, endpoint, remote, oracle: OracleBackend })
    }

    /// Uses `backend` for every remote agent, e.g. a test double.
    pub fn with_remote(mut self, backend: Arc<dyn ChatBackend>) -> Self {
        self.remote = Some(backend);
        self
    }

    pub fn backend(&self, kind: ControllerKind) -> &dyn ChatBackend {
        match (kind, &self.remote) {
            (ControllerKind::LlmRemote, Some(r)) => r.as_ref(),
            _ => &self.oracle,
        }
    }

    pub fn has_remote(&self) -> bool {
        self.remote.is_some()
    }

    pub fn request(&self, user_text: &str) -> ChatRequest {
        ChatRequest::new(&self.endpoint, self.template.system, user_text)
    }

    pub fn retry_policy(&self) -> RetryPolicy {
        self.endpoint.retry_policy()
    }
}
