//! Flocking user-prompt renderers.

use super::world::{FlockParams, NeighborObs};
use crate::sim::Heading;

/// Two decimals, never `-0.00`.
pub fn coord(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn neighbor_list(neighbors: &[NeighborObs]) -> String {
    if neighbors.is_empty() {
        return "none".into();
    }
    neighbors
        .iter()
        .enumerate()
        .map(|(k, n)| {
            format!(
                "neighbor_{}: x: {}, y: {}, heading: {} deg",
                k + 1,
                coord(n.rel_x),
                coord(n.rel_y),
                n.heading.whole_degrees()
            )
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Deployed user prompt: parameters, current heading, neighbors.
pub fn render_bird_user_prompt(params: &FlockParams, heading: Heading, neighbors: &[NeighborObs]) -> String {
    format!(
        "These are the flocking parameters: \n   -Maximum separate turn: {}, \n   -Maximum align turn: {}, \n   -Maximum cohere turn: {}, \n   -Minimum separation: {}; \n   \nThis is your current environment: \n   -Current heading: {} deg, \n   -Neighbors in vision radius: {};",
        params.max_separate_turn,
        params.max_align_turn,
        params.max_cohere_turn,
        params.minimum_separation,
        heading.whole_degrees(),
        neighbor_list(neighbors),
    )
}

/// Plain layout of the first prompt iterations.
pub fn render_plain(params: &FlockParams, heading: Heading, neighbors: &[NeighborObs]) -> String {
    format!(
        "These are the flocking parameters:\n\n    Maximum separate turn: {}\n    Maximum align turn: {}\n    Maximum cohere turn: {}\n    Minimum separation: {}\n\nThis is your current environment:\n\n    Current heading: {} deg\n    Neighbors in vision radius: {}",
        params.max_separate_turn,
        params.max_align_turn,
        params.max_cohere_turn,
        params.minimum_separation,
        heading.whole_degrees(),
        neighbor_list(neighbors),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_neighbor_marker() {
        let s = render_bird_user_prompt(&FlockParams::default(), Heading::NORTH, &[]);
        assert!(s.contains("Neighbors in vision radius: none;"));
        assert!(s.contains("-Current heading: 0 deg, "));
    }

    #[test]
    fn multiple_neighbors_are_comma_joined() {
        let n = [
            NeighborObs { id: 4, rel_x: 1.0, rel_y: -0.001, heading: Heading::new(359.6).unwrap() },
            NeighborObs { id: 2, rel_x: -2.345, rel_y: 3.0, heading: Heading::new(10.4).unwrap() },
        ];
        let s = render_bird_user_prompt(&FlockParams::default(), Heading::EAST, &n);
        assert!(s.ends_with(
            "neighbor_1: x: 1.00, y: 0.00, heading: 0 deg, neighbor_2: x: -2.35, y: 3.00, heading: 10 deg;"
        ), "{s}");
    }
}
