use serde::{Deserialize, Serialize};

use super::world::{neighbors_of, FlockParams, FlockWorld, NeighborObs};
use crate::sim::{circular_mean, subtract_headings, turn_at_most, turn_by_at_most, Heading};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BirdDecision {
    pub new_heading: Heading,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rationale: Option<String>,
}

impl BirdDecision {
    pub fn keep(heading: Heading) -> Self {
        Self { new_heading: heading, rationale: None }
    }
}

/// Which boids rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlockRule {
    Alone,
    Separate,
    AlignCohere,
}

/// Boids step on an explicit neighbor list (nearest first).
///
/// Separation (turn away from the nearest neighbor's heading) excludes alignment and
/// cohesion on the same tick. Cohesion steers toward the mean bearing to neighbor
/// positions, starting from the already-aligned heading.
pub fn flock_heading(
    heading: Heading,
    neighbors: &[NeighborObs],
    params: &FlockParams,
) -> (Heading, FlockRule) {
    let Some(nearest) = neighbors
        .iter()
        .min_by(|a, b| a.distance().total_cmp(&b.distance()))
    else {
        return (heading, FlockRule::Alone);
    };
    let valid = "flock parameters are validated non-negative";
    if nearest.distance() < params.minimum_separation {
        let away = subtract_headings(heading, nearest.heading);
        let h = turn_by_at_most(heading, away, params.max_separate_turn).expect(valid);
        return (h, FlockRule::Separate);
    }
    let mut h = heading;
    if let Some(avg) = circular_mean(neighbors.iter().map(|n| n.heading)) {
        h = turn_at_most(h, avg, params.max_align_turn).expect(valid);
    }
    if let Some(center) = circular_mean(neighbors.iter().filter_map(|n| n.bearing())) {
        h = turn_at_most(h, center, params.max_cohere_turn).expect(valid);
    }
    (h, FlockRule::AlignCohere)
}

/// Rule-based bird: the library model's separate / align / cohere step.
pub fn rule_based_bird_policy(world: &FlockWorld, bird: usize, params: &FlockParams) -> BirdDecision {
    let neighbors = neighbors_of(world, bird, params.vision);
    let (h, _) = flock_heading(world.birds[bird].heading, &neighbors, params);
    BirdDecision::keep(h)
}
