//! Versioned prompt templates.
//!
//! System texts are kept verbatim, including trailing whitespace. [`validate_prompts`]
//! checks them, and the rendered example user prompts, against the golden files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ants::{
    render_deployed, render_directional, render_numeric, render_numeric_annotated, AntPerception,
    PheromoneDir, SensorDir, SensorReadings,
};
use crate::flock::{render_bird_user_prompt, render_plain, FlockParams, NeighborObs};
use crate::sim::Heading;

pub const ANTS_V1_SYSTEM: &str = r#"You are an ant in a 2D simulation tasked with finding food, marking the path to food with trails of pheromones, and using nest scent to navigate back to the nest when carrying food.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V2_SYSTEM: &str = r#"You are an ant in a 2D simulation tasked with finding food, marking the path to food with pheromone trails, and using nest scent to navigate back to the nest when carrying food. Prioritize nest scent over pheromone trails when carrying food.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V3_SYSTEM: &str = r#"You are an ant in a 2D simulation tasked with finding food, marking the path to food with pheromone trails, and using nest scent to navigate back to the nest when carrying food. Prioritize nest scent over pheromone trails when carrying food.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V4_SYSTEM: &str = r#"You are an ant in a 2D simulation. Your task is to pick up food and release it at the nest. Use nest scent to navigate back to the nest when carrying food, prioritizing nest scent over pheromones. Use highest pheromone scent to navigate to food when not carrying any.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V5_SYSTEM: &str = r#"You are an ant in a 2D simulation. Your task is to pick up food and release it at the nest. Use nest scent to navigate back to the nest when carrying food, prioritizing nest scent over pheromones. Use highest pheromone scent to navigate to food when not carrying any.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V6_SYSTEM: &str = r#"You are an ant in a 2D simulation. Your task is to pick up food and release it at the nest. Release pheromone on food source and while you are carrying food. Use nest scent to navigate back to the nest when carrying food, prioritizing nest scent over pheromones. Use highest pheromone scent to navigate to food when not carrying any.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V7_SYSTEM: &str = r#"You are an ant in a 2D simulation. Your task is to pick up food and release it at the nest. Release pheromone on food source and while you are carrying food. Use nest scent to navigate back to the nest only when carrying food, prioritizing nest scent over pheromones. Use highest pheromone scent to navigate to food when not carrying any.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V8_SYSTEM: &str = r#"You are an ant in a 2D simulation. Your task is to pick up food and release it at the nest. Release pheromone on food source and while you are carrying food. Use nest scent to navigate back to the nest only when carrying food, prioritizing nest scent over pheromones. Use highest pheromone scent to navigate to food when not carrying any. Move away from nest and rotate randomly if you are not carrying any food and you are not sensing any pheromone.

Format your actions as a Python dictionary with these keys and options:
    "move-forward": True or False,
    "rotate": "left", "right", or "none",
    "pick-up-food": True or False,
    "drop-pheromone": True or False,
    "drop-food": True or False.

You will be provided with environment information. Keep your response concise, under 35 tokens."#;

pub const ANTS_V9_SYSTEM: &str = r#"You are an ant in a 2D simulation. Your task is to pick up food and release it at the nest. Release pheromone on food source and while you are carrying food. Use nest scent to navigate back to the nest only when carrying food, prioritizing nest scent over pheromones. Use highest pheromone scent to navigate to food when not carrying any. Move away from nest and rotate randomly if you are not carrying any food and you are not sensing any pheromone. Format your actions as a Python dictionary with these keys and options: 

   "move-forward" (options: True, False)
   "rotate" (options: "left", "right", "none", "random" )
   "pick-up-food" (options: True, False)
   "drop-pheromone" (options: True, False)
   "drop-food" (options: True, False). 
   
You will be provided with environment information. Keep your response concise, under 45 tokens."#;

pub const FLOCKING_V1_SYSTEM: &str = r#"You are an agent in a 2D simulation. Your task is to determine your new heading based on the flocking principles of separation turn, alignment turn (average heading of neighbors), and coherence turn (average heading towards flockmates). The parameters for these principles are: maximum-separate-turn, maximum-align-turn, maximum-cohere-turn, minimum-separation-distance. The simulation provides the following information: Current heading, Neighbors in vision radius.

Provide your final new heading after applying these rules, expressed as an angle in degrees. The result should be in JSON format, with the key and value: "new-heading" (value: heading in degrees). Summarize your answer in no more than 120 words."#;

pub const FLOCKING_V2_SYSTEM: &str = r#"You are an agent in a 2D simulation. Your task is to determine your new heading based on the flocking principles of separation turn, alignment turn (average heading of neighbors), and coherence turn (average heading towards flockmates). The parameters for these principles are: maximum-separate-turn, maximum-align-turn, maximum-cohere-turn, minimum-separation-distance. The simulation provides the following information: Current heading, Neighbors in vision radius.

Provide your final new heading after applying these rules, expressed as an angle in degrees. The result should be in JSON format only, with the key and value: "new-heading" (value: heading in degrees). Summarize your answer in no more than 120 words."#;

pub const FLOCKING_V3_SYSTEM: &str = r#"You are an agent in a 2D simulation. Following the compass convention, your task is to determine your new heading based on the flocking principles of separation turn, alignment turn (average heading of neighbors), and coherence turn (average heading towards flockmates). The parameters for these principles are: maximum-separate-turn, maximum-align-turn, maximum-cohere-turn, minimum-separation-distance. The simulation provides the following information: Current heading, Neighbors in vision radius.

Provide your final new heading after applying these rules, expressed as an angle in degrees. The result should be in JSON format only, with the key and value: "new-heading" (value: heading in degrees). Summarize your answer in no more than 120 words."#;

pub const FLOCKING_V4_SYSTEM: &str = r#"You are an agent in a 2D simulation. Following the compass convention, your task is to determine your new heading based on the flocking principles of separation turn, alignment turn (average heading of neighbors), and coherence turn (average heading towards flockmates). The parameters for these principles are: maximum-separate-turn, maximum-align-turn, maximum-cohere-turn, minimum-separation-distance. The simulation provides the following information: Current heading, Neighbors in vision radius.

Provide your final new heading after applying these rules, expressed as an angle in degrees. The result should be in JSON format only, with the keys and values: "rationale" (value: your explanation) and "new-heading" (value: heading in degrees)."#;

pub const FLOCKING_V5_SYSTEM: &str = r#"You are an agent in a 2D simulation. Following the compass convention, your task is to determine your new heading based on the flocking principles of separation turn, alignment turn (average heading of neighbors), and coherence turn (average heading towards flockmates). The parameters for these principles are: maximum-separate-turn, maximum-align-turn, maximum-cohere-turn, minimum-separation-distance. The simulation provides the following information: Current heading, Neighbors in vision radius. When calculating the alignment turn, always choose the shortest path (clockwise or counterclockwise) to align with the average heading of neighbors. 

Provide your final new heading after applying these rules, expressed as an angle in degrees. The result should be in JSON format only, with the keys and values: 'rationale' (value: your explanation) and 'new-heading' (value: heading in degrees)."#;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Ants,
    Flocking,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Ants => "ants",
            Scenario::Flocking => "flocking",
        }
    }
}

/// User-prompt layout of a template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UserLayout {
    AntNumeric,
    AntNumericAnnotated,
    AntDirectional,
    AntDeployed,
    BirdPlain,
    BirdDeployed,
}

#[derive(Debug, Clone, Copy)]
pub struct PromptTemplate {
    /// `<scenario>/v<version>`.
    pub name: &'static str,
    pub scenario: Scenario,
    pub version: u8,
    pub system: &'static str,
    pub layout: UserLayout,
}

impl PromptTemplate {
    pub fn system_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.system.as_bytes()))
    }

    /// Whether this is the final, deployed iteration of its scenario.
    pub fn is_deployed(&self) -> bool {
        matches!(self.layout, UserLayout::AntDeployed | UserLayout::BirdDeployed)
    }

    pub fn render_ant(&self, p: &AntPerception, r: &SensorReadings) -> Option<String> {
        let f = match self.layout {
            UserLayout::AntNumeric => render_numeric,
            UserLayout::AntNumericAnnotated => render_numeric_annotated,
            UserLayout::AntDirectional => render_directional,
            UserLayout::AntDeployed => render_deployed,
            _ => return None,
        };
        Some(f(p, r))
    }

    pub fn render_bird(&self, params: &FlockParams, heading: Heading, neighbors: &[NeighborObs]) -> Option<String> {
        match self.layout {
            UserLayout::BirdPlain => Some(render_plain(params, heading, neighbors)),
            UserLayout::BirdDeployed => Some(render_bird_user_prompt(params, heading, neighbors)),
            _ => None,
        }
    }

    /// User prompt for the template's worked example state.
    pub fn render_example(&self) -> String {
        match self.scenario {
            Scenario::Ants => {
                let (p, r) = example_ant_state(self.layout);
                self.render_ant(&p, &r).expect("ant layout")
            }
            Scenario::Flocking => {
                let (params, heading, n) = example_bird_state(self.layout);
                self.render_bird(&params, heading, &n).expect("bird layout")
            }
        }
    }
}

macro_rules! template {
    ($name:literal, $scenario:ident, $version:literal, $system:ident, $layout:ident) => {
        PromptTemplate {
            name: $name,
            scenario: Scenario::$scenario,
            version: $version,
            system: $system,
            layout: UserLayout::$layout,
        }
    };
}

pub static REGISTRY: [PromptTemplate; 14] = [
    template!("ants/v1", Ants, 1, ANTS_V1_SYSTEM, AntNumeric),
    template!("ants/v2", Ants, 2, ANTS_V2_SYSTEM, AntNumeric),
    template!("ants/v3", Ants, 3, ANTS_V3_SYSTEM, AntNumericAnnotated),
    template!("ants/v4", Ants, 4, ANTS_V4_SYSTEM, AntNumericAnnotated),
    template!("ants/v5", Ants, 5, ANTS_V5_SYSTEM, AntDirectional),
    template!("ants/v6", Ants, 6, ANTS_V6_SYSTEM, AntDirectional),
    template!("ants/v7", Ants, 7, ANTS_V7_SYSTEM, AntDirectional),
    template!("ants/v8", Ants, 8, ANTS_V8_SYSTEM, AntDirectional),
    template!("ants/v9", Ants, 9, ANTS_V9_SYSTEM, AntDeployed),
    template!("flocking/v1", Flocking, 1, FLOCKING_V1_SYSTEM, BirdPlain),
    template!("flocking/v2", Flocking, 2, FLOCKING_V2_SYSTEM, BirdPlain),
    template!("flocking/v3", Flocking, 3, FLOCKING_V3_SYSTEM, BirdPlain),
    template!("flocking/v4", Flocking, 4, FLOCKING_V4_SYSTEM, BirdPlain),
    template!("flocking/v5", Flocking, 5, FLOCKING_V5_SYSTEM, BirdDeployed),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("unknown prompt template {0:?}")]
    Unknown(String),
    #[error("template {name} is for {actual}, not {expected}")]
    WrongScenario { name: String, expected: &'static str, actual: &'static str },
    #[error("golden file {0} is missing")]
    MissingGolden(PathBuf),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
}

/// Looks up `name`, which may be `ants/v9` or just `v9` when `scenario` is given.
pub fn lookup(name: &str, scenario: Option<Scenario>) -> Result<&'static PromptTemplate, TemplateError> {
    let t = REGISTRY
        .iter()
        .find(|t| {
            t.name == name
                || scenario.is_some_and(|s| s == t.scenario && name == &t.name[s.as_str().len() + 1..])
        })
        .ok_or_else(|| TemplateError::Unknown(name.to_string()))?;
    match scenario {
        Some(s) if s != t.scenario => Err(TemplateError::WrongScenario {
            name: t.name.to_string(),
            expected: s.as_str(),
            actual: t.scenario.as_str(),
        }),
        _ => Ok(t),
    }
}

pub fn deployed(scenario: Scenario) -> &'static PromptTemplate {
    REGISTRY
        .iter()
        .find(|t| t.scenario == scenario && t.is_deployed())
        .expect("each scenario has a deployed template")
}

/// Example ant state matching the worked example of the layout.
pub fn example_ant_state(layout: UserLayout) -> (AntPerception, SensorReadings) {
    match layout {
        UserLayout::AntDirectional => (
            AntPerception {
                highest_pheromone_dir: PheromoneDir::Front,
                nest_presence: false,
                stronger_nest_scent_dir: SensorDir::Left,
                food_here: 0,
                carrying: true,
            },
            SensorReadings { pheromone: [10.0, 25.0, 5.0], nest_scent: [181.2, 180.5, 179.9], pheromone_here: 12.0 },
        ),
        UserLayout::AntDeployed => (
            AntPerception {
                highest_pheromone_dir: PheromoneDir::None,
                nest_presence: true,
                stronger_nest_scent_dir: SensorDir::Front,
                food_here: 0,
                carrying: false,
            },
            SensorReadings { pheromone: [0.0; 3], nest_scent: [198.0, 199.0, 198.0], pheromone_here: 0.0 },
        ),
        _ => (
            AntPerception {
                highest_pheromone_dir: PheromoneDir::None,
                nest_presence: true,
                stronger_nest_scent_dir: SensorDir::Left,
                food_here: 0,
                carrying: true,
            },
            SensorReadings { pheromone: [0.0; 3], nest_scent: [196.84, 196.39, 195.76], pheromone_here: 0.0 },
        ),
    }
}

/// Example bird state: heading 138 with one neighbor at (0.53, -3.69) heading 248.
pub fn example_bird_state(layout: UserLayout) -> (FlockParams, Heading, Vec<NeighborObs>) {
    let params = match layout {
        UserLayout::BirdPlain => FlockParams { minimum_separation: 1.0, ..FlockParams::default() },
        _ => FlockParams { minimum_separation: 1.5, ..FlockParams::default() },
    };
    let neighbor = NeighborObs { id: 1, rel_x: 0.53, rel_y: -3.69, heading: Heading::new(248.0).expect("finite") };
    (params, Heading::new(138.0).expect("finite"), vec![neighbor])
}

/// Result of comparing one template with its golden files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PromptCheck {
    pub name: &'static str,
    pub system_ok: bool,
    /// `None` when the template has no golden user example.
    pub user_ok: Option<bool>,
    pub system_hash: String,
    /// Byte offset of the first difference, when any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_diff: Option<usize>,
}

impl PromptCheck {
    pub fn ok(&self) -> bool {
        self.system_ok && self.user_ok != Some(false)
    }
}

fn first_difference(a: &str, b: &str) -> Option<usize> {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    a.iter().zip(b).position(|(x, y)| x != y).or_else(|| (a.len() != b.len()).then(|| a.len().min(b.len())))
}

fn read(path: &Path) -> Result<Option<String>, TemplateError> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(TemplateError::Io { path: path.to_path_buf(), message: e.to_string() }),
    }
}

/// Golden directory shipped with the crate.
pub fn bundled_golden_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/golden"))
}

/// Compares every registered template with `<dir>/<scenario>/v<N>.system.txt` and, where
/// present, the rendered example with `v<N>.user.txt`. A missing system file is an error.
pub fn validate_prompts(dir: &Path) -> Result<Vec<PromptCheck>, TemplateError> {
    REGISTRY
        .iter()
        .map(|t| {
            let base = dir.join(t.scenario.as_str());
            let system_path = base.join(format!("v{}.system.txt", t.version));
            let golden = read(&system_path)?.ok_or(TemplateError::MissingGolden(system_path))?;
            let mut first_diff = first_difference(t.system, &golden);
            let user_ok = match read(&base.join(format!("v{}.user.txt", t.version)))? {
                Some(golden_user) => {
                    let d = first_difference(&t.render_example(), &golden_user);
                    first_diff = first_diff.or(d);
                    Some(d.is_none())
                }
                None => None,
            };
            Ok(PromptCheck {
                name: t.name,
                system_ok: t.system == golden,
                user_ok,
                system_hash: t.system_hash(),
                first_diff,
            })
        })
        .collect()
}
