//! The HTTP path against a local stub endpoint.

mod common;

use std::collections::HashSet;
use std::path::Path;
use std::sync::{Arc, Mutex};

use common::stub::{envelope, StubEndpoint};
use swarm_llm::llm::{ChatRequest, ControllerKind, LlmEndpointConfig, OracleBackend, Scenario};
use swarm_llm::runner::{self, ControllerCount, RunConfig, RunStatus, AGENT_LOG, CALL_LOG};

const KEY_ENV: &str = "SWARM_LLM_REMOTE_TEST_KEY";

fn config(scenario: Scenario, kind: ControllerKind, base_url: &str) -> RunConfig {
    // every test in this binary sets the same value
    std::env::set_var(KEY_ENV, "stub-key");
    let text = match scenario {
        Scenario::Ants => "scenario = \"ants\"\nsteps = 40\npopulation = 6\nseeds = [5]\ncontrollers = []\n",
        Scenario::Flocking => "scenario = \"flocking\"\nsteps = 30\npopulation = 12\nseeds = [5]\ncontrollers = []\n",
    };
    let mut cfg = RunConfig::from_toml(text).unwrap();
    let half = cfg.population / 2;
    cfg.controllers = vec![
        ControllerCount { kind: ControllerKind::RuleBased, count: half },
        ControllerCount { kind, count: cfg.population - half },
    ];
    cfg.llm = Some(LlmEndpointConfig {
        base_url: Some(base_url.to_string()),
        backoff_ms: 0,
        timeout_secs: 5.0,
        api_key_env: KEY_ENV.into(),
        ..LlmEndpointConfig::default()
    });
    cfg
}

fn jsonl(path: &Path) -> Vec<serde_json::Value> {
    std::fs::read_to_string(path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Agent log with the fields that name the controller removed.
fn decisions(dir: &Path) -> Vec<serde_json::Value> {
    jsonl(&dir.join("seed-5").join(AGENT_LOG))
        .into_iter()
        .map(|mut v| {
            let o = v.as_object_mut().unwrap();
            o.remove("controller_kind");
            o.remove("raw_response");
            v
        })
        .collect()
}

#[test]
fn remote_oracle_matches_local_oracle() {
    let server = StubEndpoint::oracle();
    for scenario in [Scenario::Ants, Scenario::Flocking] {
        let dir = tempfile::tempdir().unwrap();
        let remote = runner::run(&config(scenario, ControllerKind::LlmRemote, &server.base_url), &dir.path().join("r")).unwrap();
        let local = runner::run(&config(scenario, ControllerKind::ScriptedOracle, &server.base_url), &dir.path().join("l")).unwrap();
        assert_eq!(remote.manifest.status, RunStatus::Complete, "{:?}", remote.manifest.seeds);
        assert_eq!(local.manifest.status, RunStatus::Complete);
        assert_eq!(decisions(&dir.path().join("r")), decisions(&dir.path().join("l")), "{scenario:?}");

        let rc = jsonl(&dir.path().join("r").join("seed-5").join(CALL_LOG));
        let lc = jsonl(&dir.path().join("l").join("seed-5").join(CALL_LOG));
        assert_eq!(rc.len(), lc.len());
        for (r, l) in rc.iter().zip(&lc) {
            assert_eq!(r["request_digest"], l["request_digest"]);
            assert_eq!(r["raw_response"], l["raw_response"]);
            assert!(r["latency_ms"].is_u64(), "remote calls carry latency");
            assert!(l.get("latency_ms").is_none(), "offline calls do not");
        }
    }
}

#[test]
fn transient_failures_are_retried() {
    let seen = Mutex::new(HashSet::new());
    let server = StubEndpoint::start(Arc::new(move |body: &str| {
        if seen.lock().unwrap().insert(body.to_string()) {
            (503, "{\"error\": \"busy\"}".to_string())
        } else {
            let request: ChatRequest = serde_json::from_str(body).unwrap();
            (200, envelope(&OracleBackend.answer(&request).unwrap()))
        }
    }));
    let dir = tempfile::tempdir().unwrap();
    let outcome = runner::run(&config(Scenario::Flocking, ControllerKind::LlmRemote, &server.base_url), dir.path()).unwrap();
    assert_eq!(outcome.manifest.status, RunStatus::Complete);
    let calls = jsonl(&dir.path().join("seed-5").join(CALL_LOG));
    let flagged: Vec<_> = calls.iter().filter(|c| c["flagged"] == true).collect();
    assert!(!flagged.is_empty());
    assert!(flagged.iter().all(|c| c["attempt"] == 0 && c["error"].as_str().unwrap().contains("503")));
    assert!(decisions(dir.path()).iter().all(|d| d.get("fell_back").is_none()));
}

#[test]
fn unparseable_replies_fall_back_and_keep_the_raw_text() {
    let server = StubEndpoint::start(Arc::new(|_: &str| (200, envelope("I would rather not say."))));
    let dir = tempfile::tempdir().unwrap();
    let outcome = runner::run(&config(Scenario::Ants, ControllerKind::LlmRemote, &server.base_url), dir.path()).unwrap();
    assert_eq!(outcome.manifest.status, RunStatus::Degraded);
    assert_eq!(outcome.exit_code(), 0);
    let calls = jsonl(&dir.path().join("seed-5").join(CALL_LOG));
    assert!(!calls.is_empty());
    assert!(calls.iter().all(|c| c["flagged"] == true && c["raw_response"] == "I would rather not say."));
}
