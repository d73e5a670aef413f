//! Ten rule-based ants, three food patches, 1000 ticks.
//!
//! ```text
//! cargo run --release --example ant_foraging -- [seed]
//! ```

use swarm_llm::ants::{AntParams, AntSimulation};
use swarm_llm::llm::ControllerKind;
use swarm_llm::metrics::{search_statistics, trip_statistics};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut sim = AntSimulation::new(AntParams::default(), vec![ControllerKind::RuleBased; 10], seed, None);
    println!("seed {seed}: {} food units on 3 patches", sim.world.initial_food);

    sim.run(1000, |_| {});
    for t in (0..=1000).step_by(200) {
        println!("tick {t:>4}: colony food {:>3}", sim.food_series[t]);
    }
    println!("pheromone left on the field: {:.1}", sim.world.total_pheromone());

    println!("\nsteps to return food, per patch");
    for (patch, s) in trip_statistics(&sim.trips) {
        println!("  patch {patch}: n {:>3}  median {:>5.1}  mean {:>5.1}  max {:>3}", s.n, s.p50, s.mean, s.max);
    }
    println!("steps to find food, per patch");
    for (patch, s) in search_statistics(&sim.searches) {
        println!("  patch {patch}: n {:>3}  median {:>5.1}  mean {:>5.1}  max {:>3}", s.n, s.p50, s.mean, s.max);
    }
}
