//! The scripted oracle answers from the prompt text alone. Its round trip
//! (render, answer, parse) agrees with the direct rules on the same state.
//!
//! ```text
//! cargo run --example oracle_round_trip
//! ```

use swarm_llm::ants::{parse_ant_response, prompt_decision_table};
use swarm_llm::flock::{flock_heading, parse_bird_response, FlockParams, NeighborObs};
use swarm_llm::llm::templates::{deployed, example_ant_state};
use swarm_llm::llm::{ChatRequest, LlmEndpointConfig, OracleBackend, Scenario};
use swarm_llm::sim::Heading;

fn main() {
    let cfg = LlmEndpointConfig::default();

    let t = deployed(Scenario::Ants);
    let (perception, readings) = example_ant_state(t.layout);
    let user = t.render_ant(&perception, &readings).unwrap();
    let reply = OracleBackend.answer(&ChatRequest::new(&cfg, t.system, &user)).unwrap();
    println!("{user}\n\noracle:\n{reply}");
    let parsed = parse_ant_response(&reply).unwrap();
    println!("matches decision table: {}\n", parsed == prompt_decision_table(&perception));

    let t = deployed(Scenario::Flocking);
    let params = FlockParams::default();
    let heading = Heading::new(200.0).unwrap();
    let neighbors = [
        NeighborObs { id: 1, rel_x: 1.7, rel_y: 2.2, heading: Heading::new(170.0).unwrap() },
        NeighborObs { id: 2, rel_x: -3.1, rel_y: 0.4, heading: Heading::new(220.0).unwrap() },
    ];
    let user = t.render_bird(&params, heading, &neighbors).unwrap();
    let reply = OracleBackend.answer(&ChatRequest::new(&cfg, t.system, &user)).unwrap();
    println!("{user}\n\noracle:\n{reply}");
    let via_text = parse_bird_response(&reply).unwrap().new_heading.degrees();
    let direct = flock_heading(heading, &neighbors, &params).0.degrees();
    println!("round trip {via_text:.3}, direct {direct:.3}");
}
