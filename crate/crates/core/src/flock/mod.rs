//! Boids flocking on a torus: world, rule-based controller, and the heading-only
//! prompt contract used by prompt-driven birds.

mod policy;
mod prompt;
mod response;
mod sim;
mod world;

pub use policy::{flock_heading, rule_based_bird_policy, BirdDecision, FlockRule};
pub use prompt::{coord, render_bird_user_prompt, render_plain};
pub use response::{parse_bird_response, BirdParseError};
pub use sim::{BirdLogEntry, FlockController, FlockSimulation, FlockTickReport};
pub use world::{apply_bird_decision, neighbors_of, BirdState, FlockParams, FlockWorld, NeighborObs};

/// Deployed system prompt and user prompt for one bird.
pub fn render_bird_prompts(
    params: &FlockParams,
    heading: crate::sim::Heading,
    neighbors: &[NeighborObs],
) -> (String, String) {
    (
        crate::llm::templates::FLOCKING_V5_SYSTEM.to_string(),
        render_bird_user_prompt(params, heading, neighbors),
    )
}
