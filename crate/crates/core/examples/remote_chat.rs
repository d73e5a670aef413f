//! One real chat-completions request with the deployed ant prompt.
//!
//! Needs `OPENAI_API_KEY`; `SWARM_LLM_BASE_URL` points it at any compatible server.
//!
//! ```text
//! OPENAI_API_KEY=... cargo run --example remote_chat
//! ```

use swarm_llm::ants::{parse_ant_response, prompt_decision_table};
use swarm_llm::llm::templates::{deployed, example_ant_state};
use swarm_llm::llm::{chat_completion, LlmEndpointConfig, Scenario};

fn main() {
    let cfg = LlmEndpointConfig::default();
    let t = deployed(Scenario::Ants);
    let (perception, readings) = example_ant_state(t.layout);
    let user = t.render_ant(&perception, &readings).unwrap();

    let reply = match chat_completion(&cfg, t.system, &user) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("not configured: {e}");
            std::process::exit(2);
        }
    };
    match reply {
        Ok((text, ms)) => {
            println!("{} replied in {ms} ms:\n{text}", cfg.model);
            match parse_ant_response(&text) {
                Ok(a) => println!("parsed {a:?}; rules say {:?}", prompt_decision_table(&perception)),
                Err(e) => println!("{e}"),
            }
        }
        Err(e) => {
            eprintln!("request failed: {e}");
            std::process::exit(1);
        }
    }
}
