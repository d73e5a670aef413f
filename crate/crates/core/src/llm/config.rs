use std::time::Duration;

use serde::{Deserialize, Serialize};

pub const DEFAULT_BASE_URL: &str = "https://api.openai.com/v1";
pub const BASE_URL_ENV: &str = "SWARM_LLM_BASE_URL";
pub const DEFAULT_API_KEY_ENV: &str = "OPENAI_API_KEY";

/// Where and how to reach an OpenAI-compatible chat-completions endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LlmEndpointConfig {
    /// Falls back to `$SWARM_LLM_BASE_URL`, then the public OpenAI endpoint.
    pub base_url: Option<String>,
    pub model: String,
    pub temperature: f64,
    pub max_retries: u32,
    pub timeout_secs: f64,
    /// Initial backoff before the first retry; doubles on each further retry.
    pub backoff_ms: u64,
    pub api_key_env: String,
}

impl Default for LlmEndpointConfig {
    fn default() -> Self {
        Self {
            base_url: None,
            model: "gpt-4o".into(),
            temperature: 0.0,
            max_retries: 2,
            timeout_secs: 30.0,
            backoff_ms: 500,
            api_key_env: DEFAULT_API_KEY_ENV.into(),
        }
    }
}

impl LlmEndpointConfig {
    pub fn resolved_base_url(&self) -> String {
        let url = self
            .base_url
            .clone()
            .or_else(|| std::env::var(BASE_URL_ENV).ok().filter(|s| !s.is_empty()))
            .unwrap_or_else(|| DEFAULT_BASE_URL.to_string());
        url.trim_end_matches('/').to_string()
    }

    pub fn completions_url(&self) -> String {
        format!("{}/chat/completions", self.resolved_base_url())
    }

    pub fn timeout(&self) -> Duration {
        Duration::from_secs_f64(self.timeout_secs.max(0.0))
    }

    pub fn retry_policy(&self) -> RetryPolicy {
        RetryPolicy { max_retries: self.max_retries, backoff: Duration::from_millis(self.backoff_ms) }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.temperature.is_nan() || self.temperature < 0.0 {
            return Err("llm.temperature must be >= 0".into());
        }
        if self.timeout_secs.is_nan() || self.timeout_secs <= 0.0 {
            return Err("llm.timeout_secs must be > 0".into());
        }
        if self.model.trim().is_empty() {
            return Err("llm.model must not be empty".into());
        }
        if self.api_key_env.trim().is_empty() {
            return Err("llm.api_key_env must not be empty".into());
        }
        Ok(())
    }
}

/// `1 + max_retries` attempts, sleeping `backoff * 2^k` before retry `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    pub max_retries: u32,
    pub backoff: Duration,
}

impl RetryPolicy {
    pub const NONE: RetryPolicy = RetryPolicy { max_retries: 0, backoff: Duration::ZERO };

    pub fn attempts(&self) -> u32 {
        self.max_retries + 1
    }

    /// Delay to wait after failed attempt number `attempt` (0-based).
    pub fn delay_after(&self, attempt: u32) -> Duration {
        self.backoff.saturating_mul(1u32.checked_shl(attempt).unwrap_or(u32::MAX))
    }
}
