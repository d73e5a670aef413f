//! Stateless OpenAI-compatible chat-completions transport.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::config::LlmEndpointConfig;
use super::oracle::OracleError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

/// Request body. Contains exactly one system and one user message: no history is kept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub temperature: f64,
    pub messages: Vec<ChatMessage>,
}

impl ChatRequest {
    pub fn new(cfg: &LlmEndpointConfig, system_text: &str, user_text: &str) -> Self {
        Self {
            model: cfg.model.clone(),
            temperature: cfg.temperature,
            messages: vec![
                ChatMessage { role: "system".into(), content: system_text.into() },
                ChatMessage { role: "user".into(), content: user_text.into() },
            ],
        }
    }

    pub fn system_text(&self) -> &str {
        &self.messages[0].content
    }

    pub fn user_text(&self) -> &str {
        &self.messages[1].content
    }

    pub fn to_body(&self) -> String {
        serde_json::to_string(self).expect("request body serializes")
    }

    /// Hex SHA-256 of the serialized body.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_body().as_bytes()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransportError {
    #[error("HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("request timed out")]
    Timeout,
    #[error("I/O error: {0}")]
    Io(String),
    #[error("malformed response envelope: {0}")]
    MalformedEnvelope(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("API key environment variable {0} is not set")]
    MissingApiKey(String),
    #[error("invalid endpoint configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BackendError {
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Something that answers a chat request with raw text.
pub trait ChatBackend: Send + Sync {
    fn complete(&self, request: &ChatRequest) -> Result<String, BackendError>;

    /// Whether answers come over the network (and so are not reproducible).
    fn is_remote(&self) -> bool;
}

/// Blocking HTTP client for `POST {base_url}/chat/completions`.
pub struct ChatClient {
    url: String,
    api_key: String,
    agent: ureq::Agent,
}

impl std::fmt::Debug for ChatClient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChatClient").field("url", &self.url).finish_non_exhaustive()
    }
}

impl ChatClient {
    /// Resolves the API key before any network traffic.
    pub fn new(cfg: &LlmEndpointConfig) -> Result<Self, ConfigError> {
        cfg.validate().map_err(ConfigError::Invalid)?;
        let api_key = std::env::var(&cfg.api_key_env)
            .ok()
            .filter(|k| !k.is_empty())
            .ok_or_else(|| ConfigError::MissingApiKey(cfg.api_key_env.clone()))?;
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(cfg.timeout()))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(Self { url: cfg.completions_url(), api_key, agent })
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    /// One request, no retries.
    pub fn send(&self, request: &ChatRequest) -> Result<String, TransportError> {
        let response = self
            .agent
            .post(&self.url)
            .header("Authorization", &format!("Bearer {}", self.api_key))
            .content_type("application/json")
            .send(request.to_body());
        let mut response = match response {
            Ok(r) => r,
            Err(ureq::Error::Timeout(_)) => return Err(TransportError::Timeout),
            Err(e) => return Err(TransportError::Io(e.to_string())),
        };
        let status = response.status().as_u16();
        let body = match response.body_mut().read_to_string() {
            Ok(b) => b,
            Err(ureq::Error::Timeout(_)) => return Err(TransportError::Timeout),
            Err(e) => return Err(TransportError::Io(e.to_string())),
        };
        if !(200..300).contains(&status) {
            return Err(TransportError::Status { status, body });
        }
        extract_content(&body)
    }
}

impl ChatBackend for ChatClient {
    fn complete(&self, request: &ChatRequest) -> Result<String, BackendError> {
        Ok(self.send(request)?)
    }

    fn is_remote(&self) -> bool {
        true
    }
}

/// `choices[0].message.content` of a chat-completions response.
pub fn extract_content(body: &str) -> Result<String, TransportError> {
    let value: serde_json::Value = serde_json::from_str(body)
        .map_err(|e| TransportError::MalformedEnvelope(format!("not JSON: {e}")))?;
    value
        .pointer("/choices/0/message/content")
        .and_then(|c| c.as_str())
        .map(str::to_string)
        .ok_or_else(|| TransportError::MalformedEnvelope("missing choices[0].message.content".into()))
}

/// Sends one stateless request and returns the raw reply text.
///
/// Returns the elapsed wall time alongside, for call records.
pub fn chat_completion(
    cfg: &LlmEndpointConfig,
    system_text: &str,
    user_text: &str,
) -> Result<Result<(String, u64), TransportError>, ConfigError> {
    let client = ChatClient::new(cfg)?;
    let started = Instant::now();
    let out = client.send(&ChatRequest::new(cfg, system_text, user_text));
    Ok(out.map(|text| (text, started.elapsed().as_millis() as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_shape() {
        let cfg = LlmEndpointConfig::default();
        let r = ChatRequest::new(&cfg, "sys", "usr");
        let v: serde_json::Value = serde_json::from_str(&r.to_body()).unwrap();
        assert_eq!(v["model"], "gpt-4o");
        assert_eq!(v["temperature"], 0.0);
        assert_eq!(v["messages"][0]["role"], "system");
        assert_eq!(v["messages"][1]["content"], "usr");
        assert_eq!(v.as_object().unwrap().len(), 3);
    }

    #[test]
    fn identical_requests_have_identical_digests() {
        let cfg = LlmEndpointConfig::default();
        let a = ChatRequest::new(&cfg, "s", "u");
        assert_eq!(a.digest(), ChatRequest::new(&cfg, "s", "u").digest());
        assert_ne!(a.digest(), ChatRequest::new(&cfg, "s", "u2").digest());
    }

    #[test]
    fn envelope_extraction() {
        let ok = r#"{"choices":[{"message":{"role":"assistant","content":"hi"}}]}"#;
        assert_eq!(extract_content(ok).unwrap(), "hi");
        assert!(matches!(extract_content("{}"), Err(TransportError::MalformedEnvelope(_))));
        assert!(matches!(extract_content("<html>"), Err(TransportError::MalformedEnvelope(_))));
    }

    #[test]
    fn missing_api_key_is_a_config_error() {
        let cfg = LlmEndpointConfig {
            api_key_env: "SWARM_LLM_TEST_KEY_THAT_IS_NEVER_SET".into(),
            base_url: Some("http://127.0.0.1:1".into()),
            ..Default::default()
        };
        assert_eq!(
            ChatClient::new(&cfg).unwrap_err(),
            ConfigError::MissingApiKey("SWARM_LLM_TEST_KEY_THAT_IS_NEVER_SET".into())
        );
        assert!(chat_completion(&cfg, "s", "u").is_err());
    }
}
