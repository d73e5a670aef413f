use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use swarm_llm::llm::templates::{bundled_golden_dir, validate_prompts};
use swarm_llm::runner::{run, summarize, Overrides, RunConfig, RunStatus};

#[derive(Parser)]
#[command(version, about = "Swarm simulations with rule-based and prompt-driven agents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every seed of a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Run only this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// e.g. `rule_based:25,scripted_oracle:5`
        #[arg(long)]
        controller_mix: Option<String>,
        /// e.g. `ants/v9`
        #[arg(long)]
        template: Option<String>,
    },
    /// Check the prompt templates against the golden texts.
    ValidatePrompts {
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Print result tables for a finished run directory.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { config, seed, out, controller_mix, template } => {
            let mut cfg = match RunConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            if let Err(e) = cfg.apply(&Overrides { seed, controller_mix, template }) {
                return fail(e);
            }
            match run(&cfg, &out) {
                Ok(o) => {
                    for s in &o.manifest.seeds {
                        let note = s.error.as_deref().unwrap_or("");
                        println!("seed {:>6}: {:?} ({} degraded ticks) {note}", s.seed, s.status, s.degraded_ticks.len());
                    }
                    println!("status {:?}, outputs in {}", o.manifest.status, o.out_dir.display());
                    if o.manifest.status == RunStatus::Failed {
                        ExitCode::FAILURE
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => fail(e),
            }
        }
        Command::ValidatePrompts { golden } => {
            let dir = golden.unwrap_or_else(bundled_golden_dir);
            match validate_prompts(&dir) {
                Ok(checks) => {
                    let mut ok = true;
                    for c in &checks {
                        ok &= c.ok();
                        let user = match c.user_ok {
                            Some(true) => ", user example ok",
                            Some(false) => ", user example MISMATCH",
                            None => "",
                        };
                        let verdict = if c.ok() { "ok" } else { "FAIL" };
                        let at = c.first_diff.map(|d| format!(" (first difference at byte {d})")).unwrap_or_default();
                        println!("{verdict:<4} {:<12} system {}{user}{at}", c.name, &c.system_hash[..16]);
                    }
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
                Err(e) => fail(e),
            }
        }
        Command::Summarize { input } => match summarize(&input) {
            Ok(s) => {
                print!("{}", s.render());
                println!("\nwritten {}", s.summary_path.display());
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
    }
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}
