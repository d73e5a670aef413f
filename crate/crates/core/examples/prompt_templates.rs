//! The prompt registry: every iteration of both scenarios, and what the deployed
//! templates render for a worked example state.
//!
//! ```text
//! cargo run --example prompt_templates -- [name]
//! ```

use swarm_llm::llm::templates::{lookup, REGISTRY};

fn main() {
    for t in &REGISTRY {
        let mark = if t.is_deployed() { "deployed" } else { "" };
        println!("{:<12} {:<20} {}  {mark}", t.name, format!("{:?}", t.layout), &t.system_hash()[..12]);
    }

    let name = std::env::args().nth(1).unwrap_or_else(|| "ants/v9".into());
    let t = match lookup(&name, None) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("\n--- {} system ---\n{}", t.name, t.system);
    println!("\n--- {} user (example state) ---\n{}", t.name, t.render_example());
}
