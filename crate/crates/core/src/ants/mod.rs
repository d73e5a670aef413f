//! Ant foraging: a bounded patch world with food sources and a nest, a diffusing
//! pheromone field, and ants driven by rules, a decision table or a chat model.

mod action;
mod perception;
mod policy;
mod prompt;
mod sim;
mod world;

pub use action::{
    apply_ant_action, parse_ant_response, AntAction, AntParseError, AntParseErrorKind, AppliedFlags,
    MotorProfile, Rotate,
};
pub use perception::{
    perceive, sense_ant, sense_readings, strongest, AntPerception, PheromoneDir, SensorDir, SensorReadings,
};
pub use policy::{prompt_decision_table, rule_based_ant_policy};
pub use prompt::{render_ant_user_prompt, render_deployed, render_directional, render_numeric, render_numeric_annotated};
pub use sim::{AntLogEntry, AntSimulation, AntTickReport, SearchRecord, TripRecord};
pub use world::{env_update_ants, AntParams, AntState, AntWorld, FoodPatchSpec, PatchCell};
