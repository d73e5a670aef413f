//! A mixed flock: 25 rule-based birds and 5 birds steered by the scripted oracle
//! through the deployed prompt. Metrics are reported per group.
//!
//! ```text
//! cargo run --release --example hybrid_flock
//! ```

use swarm_llm::flock::{FlockParams, FlockSimulation};
use swarm_llm::llm::templates::deployed;
use swarm_llm::llm::{ControllerKind, LlmEndpointConfig, PromptSetup, Scenario};
use swarm_llm::metrics::{heading_difference, pairwise_stats};

fn main() {
    let mut kinds = vec![ControllerKind::RuleBased; 25];
    kinds.extend([ControllerKind::ScriptedOracle; 5]);
    let setup = PromptSetup::new(deployed(Scenario::Flocking), LlmEndpointConfig::default(), &kinds).unwrap();
    let mut sim = FlockSimulation::new(FlockParams::default(), kinds.clone(), 3, Some(setup));

    let rule: Vec<usize> = (0..25).collect();
    let llm: Vec<usize> = (25..30).collect();
    let mut calls = 0;
    sim.run(400, |r, w| {
        calls += r.calls.len();
        if r.tick % 100 == 0 {
            let ps = pairwise_stats(&w.geometry, &w.positions(), &w.headings());
            let hs = w.headings();
            println!(
                "tick {:>3}: heading diff rule {:>5.1} llm {:>5.1}   neighbors rule {:.2} llm {:.2}",
                r.tick,
                heading_difference(&hs, &rule).unwrap().0,
                heading_difference(&hs, &llm).unwrap().0,
                ps.mean_neighbors(&rule).unwrap(),
                ps.mean_neighbors(&llm).unwrap(),
            );
        }
    });
    println!("{calls} oracle calls, {} degraded ticks", sim.degraded_ticks.len());
}
