//! One decision = render, call, parse, with bounded retries and a safe fallback.

use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::RetryPolicy;
use super::transport::{ChatBackend, ChatRequest};

/// One attempt at one decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CallRecord {
    pub tick: u64,
    pub agent_id: usize,
    pub attempt: u32,
    pub request_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_response: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock latency; omitted for offline backends so logs stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latency_ms: Option<u64>,
    /// The attempt produced no usable decision.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision<T> {
    pub value: T,
    /// Raw text of the accepted response.
    pub raw_response: Option<String>,
    pub fell_back: bool,
    pub calls: Vec<CallRecord>,
}

/// Sends `request` until `parse` accepts a response, at most `policy.attempts()` times,
/// sleeping `backoff * 2^k` after the k-th failure. Returns `fallback` when every attempt fails.
pub fn decide<T, E: Display>(
    backend: &dyn ChatBackend,
    request: &ChatRequest,
    policy: RetryPolicy,
    parse: impl Fn(&str) -> Result<T, E>,
    fallback: T,
    tick: u64,
    agent_id: usize,
) -> Decision<T> {
    let digest = request.digest();
    let mut calls = Vec::new();
    for attempt in 0..policy.attempts() {
        if attempt > 0 {
            let d = policy.delay_after(attempt - 1);
            if !d.is_zero() {
                std::thread::sleep(d);
            }
        }
        let started = Instant::now();
        let result = backend.complete(request);
        let latency_ms = backend.is_remote().then(|| started.elapsed().as_millis() as u64);
        let mut record = CallRecord {
            tick,
            agent_id,
            attempt,
            request_digest: digest.clone(),
            raw_response: None,
            error: None,
            latency_ms,
            flagged: true,
        };
        match result {
            Ok(text) => {
                match parse(&text) {
                    Ok(value) => {
                        record.flagged = false;
                        record.raw_response = Some(text.clone());
                        calls.push(record);
                        return Decision { value, raw_response: Some(text), fell_back: false, calls };
                    }
                    Err(e) => record.error = Some(e.to_string()),
                }
                record.raw_response = Some(text);
            }
            Err(e) => record.error = Some(e.to_string()),
        }
        calls.push(record);
    }
    Decision { value: fallback, raw_response: None, fell_back: true, calls }
}
