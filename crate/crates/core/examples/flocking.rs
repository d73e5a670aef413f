//! Thirty rule-based birds on the torus: headings converge, neighbor counts grow.
//!
//! ```text
//! cargo run --release --example flocking -- [seed]
//! ```

use swarm_llm::flock::{FlockParams, FlockSimulation};
use swarm_llm::llm::ControllerKind;
use swarm_llm::metrics::{heading_difference, pairwise_stats};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut sim = FlockSimulation::new(FlockParams::default(), vec![ControllerKind::RuleBased; 30], seed, None);
    let all: Vec<usize> = (0..30).collect();
    let mut collisions = 0;

    println!("{:>5} {:>10} {:>10} {:>11}", "tick", "mean diff", "neighbors", "collisions");
    sim.run(800, |r, w| {
        let ps = pairwise_stats(&w.geometry, &w.positions(), &w.headings());
        collisions += ps.collisions;
        if r.tick % 100 == 0 {
            let (diff, _) = heading_difference(&w.headings(), &all).unwrap();
            println!("{:>5} {diff:>10.1} {:>10.2} {:>11}", r.tick, ps.mean_neighbors(&all).unwrap(), ps.collisions);
        }
    });
    println!("collisions per tick: {:.2}", collisions as f64 / 800.0);
}
