//! Agent-based swarm simulations (ant foraging, boids flocking) whose agents can be
//! driven by hand-written rules or by a chat model prompted with the agent's local view.
//!
//! Most capabilities come with a runnable example under `examples/`.

pub mod ants;
pub mod flock;
pub mod llm;
pub mod metrics;
pub mod runner;
pub mod sim;
pub mod text;
