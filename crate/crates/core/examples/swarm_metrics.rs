//! The flocking and summary metrics on a hand-made layout.
//!
//! ```text
//! cargo run --example swarm_metrics
//! ```

use swarm_llm::metrics::{aggregate_runs, heading_difference, pairwise_stats, summarize};
use swarm_llm::sim::{Heading, WorldGeometry};

fn main() {
    let g = WorldGeometry::torus(35);
    let positions = [(0.0, 0.0), (0.6, 0.5), (3.0, 0.0), (34.5, 0.0), (-33.0, 10.0)];
    let headings: Vec<Heading> = [10.0, 12.0, 20.0, 355.0, 180.0].into_iter().map(|d| Heading::new(d).unwrap()).collect();

    let ps = pairwise_stats(&g, &positions, &headings);
    println!("collisions (d <= 1): {}", ps.collisions);
    println!("neighbors (1 < d <= 5, within 15 deg): {:?}", ps.neighbor_counts);
    let (m, sd) = heading_difference(&headings, &[0, 1, 2, 3, 4]).unwrap();
    println!("heading difference: mean {m:.2}, std {sd:.2}");

    let s = summarize(&[20.0, 18.0, 25.0, 31.0, 19.0, 22.0]).unwrap();
    println!("summary: {s:?}");
    let runs = vec![vec![0.0, 2.0, 5.0], vec![0.0, 4.0, 7.0]];
    println!("per-tick mean, std across runs: {:?}", aggregate_runs(&runs).unwrap());
}
