//! Deterministic stand-in for a chat model.
//!
//! Reads the deployed user prompt back out of the request text and answers by
//! following the deployed system prompt's rules literally. It never sees simulator
//! state, so it exercises the same render / parse path as a remote model.

use thiserror::Error;

use super::templates::{ANTS_V9_SYSTEM, FLOCKING_V5_SYSTEM};
use super::transport::{BackendError, ChatBackend, ChatRequest};
use crate::ants::{AntAction, Rotate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the oracle only answers the deployed ant and flocking prompts")]
    UnsupportedTemplate,
    #[error("cannot read prompt field {0:?}")]
    Field(&'static str),
}

fn field<'a>(text: &'a str, label: &'static str) -> Result<&'a str, OracleError> {
    let start = text.find(label).ok_or(OracleError::Field(label))? + label.len();
    let rest = &text[start..];
    let end = rest.find(['\n']).unwrap_or(rest.len());
    Ok(rest[..end].trim().trim_end_matches([',', ';', '.']).trim())
}

fn flag(text: &str, label: &'static str) -> Result<bool, OracleError> {
    let v = field(text, label)?;
    if v.starts_with("True") {
        Ok(true)
    } else if v.starts_with("False") {
        Ok(false)
    } else {
        Err(OracleError::Field(label))
    }
}

fn turn_toward(dir: &str) -> Option<Rotate> {
    match dir {
        "Left" => Some(Rotate::Left),
        "Front" => Some(Rotate::None),
        "Right" => Some(Rotate::Right),
        _ => None,
    }
}

/// Decision for a deployed-layout ant user prompt.
pub fn oracle_ant_decision(user_text: &str) -> Result<AntAction, OracleError> {
    let pheromone = field(user_text, "-Highest Pheromone Concentration:")?;
    let at_nest = flag(user_text, "-Nest Presence:")?;
    let scent = field(user_text, "-Stronger Nest Scent:")?;
    let food: u32 = field(user_text, "-Food Concentration at your location:")?
        .parse()
        .map_err(|_| OracleError::Field("-Food Concentration at your location:"))?;
    let carrying = flag(user_text, "-Carrying Food Status:")?;

    let mut a = AntAction { move_forward: true, ..AntAction::IDLE };
    if carrying {
        // nest scent first, pheromone trail laid on the way back
        a.rotate = turn_toward(scent).ok_or(OracleError::Field("-Stronger Nest Scent:"))?;
        a.drop_pheromone = true;
        a.drop_food = at_nest;
    } else if food > 0 {
        a.pick_up_food = true;
        a.drop_pheromone = true;
    } else if pheromone == "None" {
        a.rotate = Rotate::Random;
    } else {
        a.rotate = turn_toward(pheromone).ok_or(OracleError::Field("-Highest Pheromone Concentration:"))?;
    }
    Ok(a)
}

fn number(s: &str, label: &'static str) -> Result<f64, OracleError> {
    s.trim()
        .trim_end_matches("deg")
        .trim()
        .parse()
        .map_err(|_| OracleError::Field(label))
}

fn wrap(d: f64) -> f64 {
    d.rem_euclid(360.0)
}

/// Signed smallest turn from `from` to `to`, clockwise positive.
fn delta(from: f64, to: f64) -> f64 {
    let d = wrap(to - from);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

fn capped(from: f64, turn: f64, cap: f64) -> f64 {
    wrap(from + turn.clamp(-cap, cap))
}

fn mean_angle(angles: &[f64]) -> Option<f64> {
    let (s, c) = angles
        .iter()
        .fold((0.0, 0.0), |(s, c), a| (s + a.to_radians().sin(), c + a.to_radians().cos()));
    (s != 0.0 || c != 0.0).then(|| wrap(s.atan2(c).to_degrees()))
}

/// New heading for a deployed-layout bird user prompt.
pub fn oracle_bird_decision(user_text: &str) -> Result<f64, OracleError> {
    let max_sep = number(field(user_text, "-Maximum separate turn:")?, "-Maximum separate turn:")?;
    let max_align = number(field(user_text, "-Maximum align turn:")?, "-Maximum align turn:")?;
    let max_cohere = number(field(user_text, "-Maximum cohere turn:")?, "-Maximum cohere turn:")?;
    let min_sep = number(field(user_text, "-Minimum separation:")?, "-Minimum separation:")?;
    let heading = number(field(user_text, "-Current heading:")?, "-Current heading:")?;
    let list = field(user_text, "-Neighbors in vision radius:")?;

    // (x, y, heading)
    let mut neighbors = Vec::new();
    if list != "none" {
        for item in list.split("neighbor_").filter(|s| !s.trim().is_empty()) {
            let bad = OracleError::Field("-Neighbors in vision radius:");
            let x = item.split("x:").nth(1).and_then(|s| s.split(',').next()).ok_or(bad.clone())?;
            let y = item.split("y:").nth(1).and_then(|s| s.split(',').next()).ok_or(bad.clone())?;
            let h = item.split("heading:").nth(1).and_then(|s| s.split(',').next()).ok_or(bad)?;
            let label = "-Neighbors in vision radius:";
            neighbors.push((number(x, label)?, number(y, label)?, number(h, label)?));
        }
    }
    if neighbors.is_empty() {
        return Ok(heading);
    }

    let nearest = neighbors
        .iter()
        .min_by(|a, b| a.0.hypot(a.1).total_cmp(&b.0.hypot(b.1)))
        .expect("non-empty");
    if nearest.0.hypot(nearest.1) < min_sep {
        return Ok(capped(heading, -delta(heading, nearest.2), max_sep));
    }
    let headings: Vec<f64> = neighbors.iter().map(|n| n.2).collect();
    let mut h = heading;
    if let Some(avg) = mean_angle(&headings) {
        h = capped(h, delta(h, avg), max_align);
    }
    let bearings: Vec<f64> = neighbors
        .iter()
        .filter(|n| n.0 != 0.0 || n.1 != 0.0)
        .map(|n| wrap(n.0.atan2(n.1).to_degrees()))
        .collect();
    if let Some(center) = mean_angle(&bearings) {
        h = capped(h, delta(h, center), max_cohere);
    }
    Ok(h)
}

/// Offline [`ChatBackend`] answering with the oracle decisions.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleBackend;

impl OracleBackend {
    pub fn answer(&self, request: &ChatRequest) -> Result<String, OracleError> {
        let system = request.system_text();
        if system == ANTS_V9_SYSTEM {
            Ok(oracle_ant_decision(request.user_text())?.to_python_dict())
        } else if system == FLOCKING_V5_SYSTEM {
            let h = oracle_bird_decision(request.user_text())?;
            Ok(serde_json::json!({"rationale": "separate, then align and cohere", "new-heading": h}).to_string())
        } else {
            Err(OracleError::UnsupportedTemplate)
        }
    }
}

impl ChatBackend for OracleBackend {
    fn complete(&self, request: &ChatRequest) -> Result<String, BackendError> {
        Ok(self.answer(request)?)
    }

    fn is_remote(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const V9_USER: &str = include_str!("../../golden/ants/v9.user.txt");
    const V5_USER: &str = include_str!("../../golden/flocking/v5.user.txt");

    #[test]
    fn ant_example_moves_on_randomly() {
        let a = oracle_ant_decision(V9_USER).unwrap();
        assert_eq!(a, AntAction { move_forward: true, rotate: Rotate::Random, ..AntAction::IDLE });
    }

    #[test]
    fn ant_carrying_follows_scent() {
        let t = V9_USER.replace("Status: False (You are not", "Status: True (You are");
        let a = oracle_ant_decision(&t).unwrap();
        assert!(a.drop_food && a.drop_pheromone && a.rotate == Rotate::None);
    }

    #[test]
    fn bird_example_is_146() {
        assert!((oracle_bird_decision(V5_USER).unwrap() - 146.0).abs() < 1e-9);
    }

    #[test]
    fn bird_without_neighbors() {
        let t = V5_USER.replace("neighbor_1: x: 0.53, y: -3.69, heading: 248 deg", "none");
        assert_eq!(oracle_bird_decision(&t).unwrap(), 138.0);
    }

    #[test]
    fn bird_separation() {
        let t = V5_USER.replace("x: 0.53, y: -3.69", "x: 0.50, y: -0.50");
        // away from 248 means counter-clockwise from 138, capped at 1.5
        assert!((oracle_bird_decision(&t).unwrap() - 136.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_other_templates() {
        let cfg = crate::llm::LlmEndpointConfig::default();
        let req = ChatRequest::new(&cfg, "You are a cat.", V9_USER);
        assert_eq!(OracleBackend.answer(&req), Err(OracleError::UnsupportedTemplate));
    }
}
