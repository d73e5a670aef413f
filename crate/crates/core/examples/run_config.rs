//! Config-driven experiment: load a bundled config, run it into a directory,
//! then print the summary tables.
//!
//! ```text
//! cargo run --release --example run_config -- [config] [out-dir]
//! ```

use std::path::PathBuf;

use swarm_llm::runner::{run, summarize, RunConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/ants-hybrid-oracle.toml"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("swarm-llm-example"));

    let cfg = match RunConfig::load(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let outcome = run(&cfg, &out).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    println!("status {:?}, digest {}", outcome.manifest.status, &outcome.manifest.config_digest[..12]);
    for f in &outcome.manifest.outputs {
        println!("  {}", out.join(f).display());
    }
    print!("\n{}", summarize(&out).unwrap().render());
}
