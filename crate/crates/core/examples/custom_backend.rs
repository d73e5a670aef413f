//! Plugging a custom `ChatBackend` in for the remote agents, e.g. a local model
//! or a recorded transcript. Here: a backend that always turns left and logs.
//!
//! ```text
//! cargo run --example custom_backend
//! ```

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use swarm_llm::ants::{AntParams, AntSimulation};
use swarm_llm::llm::templates::deployed;
use swarm_llm::llm::{BackendError, ChatBackend, ChatRequest, ControllerKind, LlmEndpointConfig, PromptSetup, Scenario};

#[derive(Default)]
struct AlwaysLeft {
    seen: AtomicUsize,
}

impl ChatBackend for AlwaysLeft {
    fn complete(&self, request: &ChatRequest) -> Result<String, BackendError> {
        if self.seen.fetch_add(1, Ordering::Relaxed) == 0 {
            println!("first user prompt:\n{}\n", request.user_text());
        }
        Ok(r#"{"move-forward": true, "rotate": "left", "pick-up-food": false, "drop-pheromone": false, "drop-food": false}"#.into())
    }

    fn is_remote(&self) -> bool {
        false
    }
}

fn main() {
    let backend = Arc::new(AlwaysLeft::default());
    // built without llm_remote kinds, so no API key is needed
    let setup = PromptSetup::new(deployed(Scenario::Ants), LlmEndpointConfig::default(), &[])
        .unwrap()
        .with_remote(backend.clone());
    let mut sim = AntSimulation::new(AntParams::default(), vec![ControllerKind::LlmRemote; 3], 1, Some(setup));
    sim.run(50, |_| {});
    for a in &sim.world.ants {
        println!("ant {} at ({:.1}, {:.1}) heading {}", a.id, a.pos.0, a.pos.1, a.heading.degrees());
    }
    println!("{} requests", backend.seen.load(Ordering::Relaxed));
}
