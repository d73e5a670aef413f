//! Byte-compare every template, and the printed user examples, with the golden files.
//!
//! ```text
//! cargo run --example validate_prompts -- [golden-dir]
//! ```

use std::path::PathBuf;

use swarm_llm::llm::templates::{bundled_golden_dir, validate_prompts};

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(bundled_golden_dir);
    let checks = validate_prompts(&dir).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    for c in &checks {
        println!("{:<12} system {:<5} user {:<5} {}", c.name, c.system_ok, format!("{:?}", c.user_ok), &c.system_hash[..16]);
    }
    let bad = checks.iter().filter(|c| !c.ok()).count();
    println!("{} templates, {bad} mismatches", checks.len());
    std::process::exit(i32::from(bad > 0));
}
