mod common;

use std::path::Path;
use std::process::{Command, Output};

use swarm_llm::runner::{RunManifest, RunStatus, MANIFEST_FILE, SUMMARY_FILE};

fn swarm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swarm-llm")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.toml");
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const SMALL_ANTS: &str = r#"
scenario = "ants"
steps = 60
population = 4
seeds = [3, 4]

[[controllers]]
kind = "rule_based"
count = 4
"#;

#[test]
fn run_then_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_ANTS);
    let out = dir.path().join("out");
    let o = swarm(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m = RunManifest::read(&out.join(MANIFEST_FILE)).unwrap();
    assert_eq!(m.status, RunStatus::Complete);
    assert_eq!(m.seeds.iter().map(|s| s.seed).collect::<Vec<_>>(), vec![3, 4]);

    let s = swarm(&["summarize", "--in", out.to_str().unwrap()]);
    assert!(s.status.success(), "{}", stderr(&s));
    let text = String::from_utf8_lossy(&s.stdout);
    assert!(text.contains("steps to return food") && text.contains("median"), "{text}");
    assert!(out.join(SUMMARY_FILE).exists());
}

#[test]
fn seed_and_mix_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_ANTS);
    let out = dir.path().join("out");
    let o = swarm(&[
        "run",
        "--config",
        &cfg,
        "--seed",
        "9",
        "--controller-mix",
        "rule_based:2,scripted_oracle:2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m = RunManifest::read(&out.join(MANIFEST_FILE)).unwrap();
    assert_eq!(m.config.seeds, vec![9]);
    assert_eq!(m.config.controllers.len(), 2);
    assert!(out.join("seed-9").join("calls.jsonl").exists());
}

#[test]
fn config_errors_name_the_key_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &SMALL_ANTS.replace("steps = 60", "steps = 60\nspeed = 2"));
    let o = swarm(&["run", "--config", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("speed"), "{}", stderr(&o));

    let cfg = write_config(dir.path(), &SMALL_ANTS.replace("count = 4", "count = 3"));
    let o = swarm(&["run", "--config", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("controllers"), "{}", stderr(&o));
    assert!(!dir.path().join("o").exists(), "nothing is written for a bad config");
}

#[test]
fn oracle_rejects_historical_template() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_ANTS);
    let o = swarm(&[
        "run",
        "--config",
        &cfg,
        "--controller-mix",
        "scripted_oracle:4",
        "--template",
        "v5",
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn missing_api_key_fails_before_any_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!("{SMALL_ANTS}\n[llm]\napi_key_env = \"SWARM_LLM_TEST_UNSET_KEY\"\n")
            .replace("kind = \"rule_based\"", "kind = \"llm_remote\""),
    );
    let out = dir.path().join("o");
    let o = Command::new(env!("CARGO_BIN_EXE_swarm-llm"))
        .args(["run", "--config", &cfg, "--out", out.to_str().unwrap()])
        .env_remove("SWARM_LLM_TEST_UNSET_KEY")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SWARM_LLM_TEST_UNSET_KEY"), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn validate_prompts_detects_an_edited_golden_file() {
    let o = swarm(&["validate-prompts"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().filter(|l| l.starts_with("ok")).count(), 14);

    let dir = tempfile::tempdir().unwrap();
    for (rel, bytes) in common::tree(&swarm_llm::llm::templates::bundled_golden_dir()) {
        let p = dir.path().join(&rel);
        std::fs::create_dir_all(p.parent().unwrap()).unwrap();
        std::fs::write(p, bytes).unwrap();
    }
    let target = dir.path().join("flocking").join("v5.system.txt");
    let mut text = std::fs::read(&target).unwrap();
    text[10] ^= 1;
    std::fs::write(&target, text).unwrap();
    let o = swarm(&["validate-prompts", "--golden", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL flocking/v5"));
}

#[test]
fn summarize_an_empty_directory_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = swarm(&["summarize", "--in", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bundled_offline_configs_run() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["ants-llm-oracle.toml", "flocking-hybrid-oracle.toml"] {
        let out = dir.path().join(name);
        let o = swarm(&[
            "run",
            "--config",
            common::config_path(name).to_str().unwrap(),
            "--seed",
            "1",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert!(swarm(&["summarize", "--in", out.to_str().unwrap()]).status.success());
    }
}
