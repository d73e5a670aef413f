use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use super::manifest::{unix_now, RunManifest, RunStatus, SeedManifest};
use super::RunError;
use crate::ants::AntSimulation;
use crate::flock::{FlockSimulation, FlockWorld};
use crate::llm::{ControllerKind, PromptSetup, Scenario};
use crate::metrics::{
    heading_difference, pairwise_stats, write_rows, BirdGroup, FoodRow, HeadingRow, PairwiseRow,
    PositionCsvRow, SearchRow, TripRow,
};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const AGENT_LOG: &str = "agents.jsonl";
pub const CALL_LOG: &str = "calls.jsonl";
pub const POSITIONS_FILE: &str = "positions.csv";
pub const FOOD_FILE: &str = "food.csv";
pub const TRIPS_FILE: &str = "trips.csv";
pub const SEARCHES_FILE: &str = "searches.csv";
pub const HEADINGS_FILE: &str = "headings.csv";
pub const PAIRWISE_FILE: &str = "pairwise.csv";

/// A finished run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub manifest: RunManifest,
}

impl RunOutcome {
    /// Process exit code: nonzero only when a seed did not complete.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.manifest.status == RunStatus::Failed)
    }
}

enum SeedMetrics {
    Ants { food: Vec<FoodRow>, trips: Vec<TripRow>, searches: Vec<SearchRow> },
    Flock { headings: Vec<HeadingRow>, pairwise: Vec<PairwiseRow> },
}

struct SeedOutput {
    metrics: SeedMetrics,
    degraded_ticks: Vec<u64>,
    calls: usize,
    flagged_calls: usize,
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> RunError + '_ {
    move |e| RunError::Io { path: path.to_path_buf(), message: e.to_string() }
}

struct JsonLines {
    path: PathBuf,
    out: BufWriter<File>,
}

impl JsonLines {
    fn create(path: PathBuf) -> Result<Self, RunError> {
        let f = File::create(&path).map_err(io_err(&path))?;
        Ok(Self { out: BufWriter::new(f), path })
    }

    fn write<T: Serialize>(&mut self, value: &T) -> Result<(), RunError> {
        serde_json::to_writer(&mut self.out, value)
            .map_err(|e| RunError::Io { path: self.path.clone(), message: e.to_string() })?;
        self.out.write_all(b"\n").map_err(io_err(&self.path))
    }

    fn finish(mut self) -> Result<(), RunError> {
        self.out.flush().map_err(io_err(&self.path))
    }
}

/// Executes every seed of `config` and writes all outputs under `out`.
///
/// Seeds run in parallel unless a remote model is involved. A failed seed does not stop
/// the others; it is reported in the manifest and in [`RunOutcome::exit_code`].
pub fn run(config: &RunConfig, out: &Path) -> Result<RunOutcome, RunError> {
    run_with_setup(config, out, None)
}

/// Like [`run`], serving remote agents from `setup` instead of building an HTTP client.
pub fn run_with_setup(config: &RunConfig, out: &Path, setup: Option<PromptSetup>) -> Result<RunOutcome, RunError> {
    config.validate()?;
    let kinds = config.kinds();
    let template = config.template()?;
    let setup = match setup {
        Some(s) => Some(s),
        None if kinds.iter().any(|k| k.uses_prompt()) => Some(PromptSetup::new(template, config.endpoint(), &kinds)?),
        None => None,
    };
    std::fs::create_dir_all(out).map_err(io_err(out))?;

    let mut manifest = RunManifest::new(config, template);
    manifest.write(&out.join(MANIFEST_FILE))?;

    let run_seed = |&seed: &u64| {
        let dir = out.join(format!("seed-{seed}"));
        let result = std::fs::create_dir_all(&dir)
            .map_err(io_err(&dir))
            .and_then(|_| execute_seed(config, &kinds, seed, setup.clone(), &dir));
        (seed, dir, result)
    };
    let remote = setup.as_ref().is_some_and(|s| s.has_remote());
    let results: Vec<_> = if remote {
        config.seeds.iter().map(run_seed).collect()
    } else {
        config.seeds.par_iter().map(run_seed).collect()
    };

    let mut food = Vec::new();
    let mut trips = Vec::new();
    let mut searches = Vec::new();
    let mut headings = Vec::new();
    let mut pairwise = Vec::new();
    for (seed, dir, result) in results {
        let rel = dir.strip_prefix(out).unwrap_or(&dir).to_string_lossy().into_owned();
        let mut files = vec![format!("{rel}/{AGENT_LOG}"), format!("{rel}/{CALL_LOG}")];
        if config.scenario == Scenario::Flocking {
            files.push(format!("{rel}/{POSITIONS_FILE}"));
        }
        let entry = match result {
            Ok(o) => {
                match o.metrics {
                    SeedMetrics::Ants { food: f, trips: t, searches: s } => {
                        food.extend(f);
                        trips.extend(t);
                        searches.extend(s);
                    }
                    SeedMetrics::Flock { headings: h, pairwise: p } => {
                        headings.extend(h);
                        pairwise.extend(p);
                    }
                }
                SeedManifest {
                    seed,
                    status: if o.degraded_ticks.is_empty() { RunStatus::Complete } else { RunStatus::Degraded },
                    files,
                    calls: o.calls,
                    flagged_calls: o.flagged_calls,
                    degraded_ticks: o.degraded_ticks,
                    error: None,
                }
            }
            Err(e) => SeedManifest {
                seed,
                status: RunStatus::Failed,
                files,
                calls: 0,
                flagged_calls: 0,
                degraded_ticks: vec![],
                error: Some(e.to_string()),
            },
        };
        manifest.seeds.push(entry);
    }

    let mut write = |name: &str, f: &dyn Fn(&Path) -> Result<(), crate::metrics::MetricsError>| {
        f(&out.join(name))?;
        manifest.outputs.push(name.to_string());
        Ok::<(), RunError>(())
    };
    match config.scenario {
        Scenario::Ants => {
            write(FOOD_FILE, &|p| write_rows(p, &food))?;
            write(TRIPS_FILE, &|p| write_rows(p, &trips))?;
            write(SEARCHES_FILE, &|p| write_rows(p, &searches))?;
        }
        Scenario::Flocking => {
            write(HEADINGS_FILE, &|p| write_rows(p, &headings))?;
            write(PAIRWISE_FILE, &|p| write_rows(p, &pairwise))?;
        }
    }
    manifest.finish(unix_now());
    manifest.write(&out.join(MANIFEST_FILE))?;
    Ok(RunOutcome { out_dir: out.to_path_buf(), manifest })
}

fn execute_seed(
    config: &RunConfig,
    kinds: &[ControllerKind],
    seed: u64,
    setup: Option<PromptSetup>,
    dir: &Path,
) -> Result<SeedOutput, RunError> {
    let mut agents = JsonLines::create(dir.join(AGENT_LOG))?;
    let mut calls = JsonLines::create(dir.join(CALL_LOG))?;
    let mut n_calls = 0;
    let mut flagged = 0;
    let mut failure = None;
    let output = match config.scenario {
        Scenario::Ants => {
            let mut sim = AntSimulation::new(config.ants.clone(), kinds.to_vec(), seed, setup);
            sim.run(config.steps, |r| {
                if failure.is_some() {
                    return;
                }
                let res = r
                    .entries
                    .iter()
                    .try_for_each(|e| agents.write(e))
                    .and_then(|_| r.calls.iter().try_for_each(|c| calls.write(c)));
                n_calls += r.calls.len();
                flagged += r.calls.iter().filter(|c| c.flagged).count();
                failure = res.err();
            });
            let food = sim
                .food_series
                .iter()
                .enumerate()
                .map(|(tick, &food)| FoodRow { tick: tick as u64, run: seed, food })
                .collect();
            let trips = sim.trips.iter().map(|&trip| TripRow { run: seed, trip }).collect();
            let searches = sim.searches.iter().map(|&search| SearchRow { run: seed, search }).collect();
            SeedOutput {
                metrics: SeedMetrics::Ants { food, trips, searches },
                degraded_ticks: sim.degraded_ticks.clone(),
                calls: n_calls,
                flagged_calls: flagged,
            }
        }
        Scenario::Flocking => {
            let mut sim = FlockSimulation::new(config.flocking.clone(), kinds.to_vec(), seed, setup);
            let positions_path = dir.join(POSITIONS_FILE);
            let mut positions: Vec<PositionCsvRow> = sim.position_rows();
            let tracker = FlockTracker::new(kinds);
            let mut headings = Vec::new();
            let mut pairwise = Vec::new();
            let mut cumulative = 0;
            tracker.record(0, seed, &sim.world, &mut cumulative, &mut headings, &mut pairwise);
            let steps = config.steps;
            for _ in 0..steps {
                let r = sim.step();
                if failure.is_none() {
                    failure = r
                        .entries
                        .iter()
                        .try_for_each(|e| agents.write(e))
                        .and_then(|_| r.calls.iter().try_for_each(|c| calls.write(c)))
                        .err();
                }
                n_calls += r.calls.len();
                flagged += r.calls.iter().filter(|c| c.flagged).count();
                positions.extend(sim.position_rows());
                tracker.record(r.tick, seed, &sim.world, &mut cumulative, &mut headings, &mut pairwise);
            }
            write_rows(&positions_path, &positions)?;
            SeedOutput {
                metrics: SeedMetrics::Flock { headings, pairwise },
                degraded_ticks: sim.degraded_ticks.clone(),
                calls: n_calls,
                flagged_calls: flagged,
            }
        }
    };
    if let Some(e) = failure {
        return Err(e);
    }
    agents.finish()?;
    calls.finish()?;
    Ok(output)
}

/// Group membership for the flocking metrics.
struct FlockTracker {
    all: Vec<usize>,
    rule: Vec<usize>,
    llm: Vec<usize>,
}

impl FlockTracker {
    fn new(kinds: &[ControllerKind]) -> Self {
        let (rule, llm): (Vec<usize>, Vec<usize>) =
            (0..kinds.len()).partition(|&i| kinds[i] == ControllerKind::RuleBased);
        Self { all: (0..kinds.len()).collect(), rule, llm }
    }

    fn groups(&self) -> Vec<(BirdGroup, &[usize])> {
        if self.llm.is_empty() {
            vec![(BirdGroup::Netlogo, &self.all)]
        } else if self.rule.is_empty() {
            vec![(BirdGroup::HybridLlm, &self.llm)]
        } else {
            vec![(BirdGroup::HybridRule, &self.rule), (BirdGroup::HybridLlm, &self.llm)]
        }
    }

    fn record(
        &self,
        tick: u64,
        run: u64,
        world: &FlockWorld,
        cumulative: &mut u64,
        headings: &mut Vec<HeadingRow>,
        pairwise: &mut Vec<PairwiseRow>,
    ) {
        let h = world.headings();
        for (group, members) in self.groups() {
            if let Some((mean, std)) = heading_difference(&h, members) {
                headings.push(HeadingRow { tick, run, group: group.as_str(), mean, std });
            }
        }
        let stats = pairwise_stats(&world.geometry, &world.positions(), &h);
        *cumulative += stats.collisions as u64;
        pairwise.push(PairwiseRow {
            tick,
            run,
            collisions: stats.collisions,
            mean_neighbors_llm: stats.mean_neighbors(&self.llm),
            mean_neighbors_rule: stats.mean_neighbors(&self.rule),
            collisions_cumulative: *cumulative,
        });
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::summarize;

    fn config(text: &str) -> RunConfig {
        RunConfig::from_toml(text).unwrap()
    }

    const ANTS: &str = r#"
scenario = "ants"
steps = 60
population = 4
seeds = [3, 4]
[[controllers]]
kind = "rule_based"
count = 2
[[controllers]]
kind = "scripted_oracle"
count = 2
"#;

    fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
        let mut out = Vec::new();
        for name in [FOOD_FILE, TRIPS_FILE, SEARCHES_FILE, HEADINGS_FILE, PAIRWISE_FILE] {
            if let Ok(b) = std::fs::read(dir.join(name)) {
                out.push((name.to_string(), b));
            }
        }
        for seed in ["seed-3", "seed-4", "seed-1"] {
            for name in [AGENT_LOG, CALL_LOG, POSITIONS_FILE] {
                if let Ok(b) = std::fs::read(dir.join(seed).join(name)) {
                    out.push((format!("{seed}/{name}"), b));
                }
            }
        }
        out
    }

    #[test]
    fn oracle_mix_is_reproducible() {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let c = config(ANTS);
        let o = run(&c, a.path()).unwrap();
        run(&c, b.path()).unwrap();
        assert_eq!(o.exit_code(), 0);
        assert_eq!(o.manifest.status, RunStatus::Complete);
        let (x, y) = (read_all(a.path()), read_all(b.path()));
        assert_eq!(x.len(), 3 + 2 * 2);
        assert_eq!(x, y);
        let m = RunManifest::read(&a.path().join(MANIFEST_FILE)).unwrap();
        assert_eq!(m.template_hashes.keys().collect::<Vec<_>>(), ["ants/v9"]);
        assert!(summarize(a.path()).is_ok());
    }

    #[test]
    fn flocking_hybrid_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let c = config(
            r#"
scenario = "flocking"
steps = 5
population = 6
seeds = [1]
[[controllers]]
kind = "rule_based"
count = 4
[[controllers]]
kind = "scripted_oracle"
count = 2
"#,
        );
        run(&c, dir.path()).unwrap();
        let headings = std::fs::read_to_string(dir.path().join(HEADINGS_FILE)).unwrap();
        assert_eq!(headings.lines().count(), 1 + 6 * 2);
        assert!(headings.contains(",hybrid_llm,") && headings.contains(",hybrid_rule,"));
        let positions = std::fs::read_to_string(dir.path().join("seed-1").join(POSITIONS_FILE)).unwrap();
        assert_eq!(positions.lines().count(), 1 + 6 * 6);
        let s = summarize(dir.path()).unwrap();
        assert!(s.render().contains("hybrid llm"));
    }

    #[test]
    fn oracle_with_historical_template_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = config(ANTS);
        c.prompt_template = Some("ants/v4".into());
        assert!(matches!(run(&c, dir.path()), Err(RunError::Setup(_))));
    }

    #[test]
    fn empty_directory_has_no_runs() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(summarize(dir.path()), Err(RunError::NoRuns(_))));
    }
}
