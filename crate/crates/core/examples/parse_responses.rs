//! Turning model replies into actions. Both parsers accept code fences, single quotes,
//! Python literals and surrounding chatter, and fail with typed errors otherwise.
//!
//! ```text
//! cargo run --example parse_responses
//! ```

use swarm_llm::ants::parse_ant_response;
use swarm_llm::flock::parse_bird_response;

fn main() {
    let ants = [
        "{\"move-forward\": True, \"rotate\": \"none\", \"pick-up-food\": False, \"drop-pheromone\": False, \"drop-food\": False}",
        "Sure!\n```python\n{'move-forward': True, 'rotate': 'left', 'pick-up-food': False, 'drop-pheromone': True, 'drop-food': False}\n```",
        "{\"move-forward\": true, \"rotate\": \"backwards\", \"pick-up-food\": false, \"drop-pheromone\": false, \"drop-food\": false}",
        "{\"move-forward\": True}",
        "I cannot decide.",
    ];
    for text in ants {
        match parse_ant_response(text) {
            Ok(a) => println!("ant   ok   {a:?}"),
            Err(e) => println!("ant   err  {e}"),
        }
    }

    let birds = [
        r#"{"rationale": "align with the neighbor", "new-heading": 146}"#,
        "```json\n{\"rationale\": \"turn\", \"new-heading\": -15.5}\n```",
        "{\n  \"rationale\": Too far to separate, so align, then cohere.,\n  \"new-heading\": 146\n}",
        r#"{"new-heading": "north"}"#,
    ];
    for text in birds {
        match parse_bird_response(text) {
            Ok(d) => println!("bird  ok   heading {} rationale {:?}", d.new_heading.degrees(), d.rationale),
            Err(e) => println!("bird  err  {e}"),
        }
    }
}
