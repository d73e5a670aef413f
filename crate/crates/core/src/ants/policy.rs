use super::action::{AntAction, Rotate};
use super::perception::{sense_readings, strongest, AntPerception, PheromoneDir, SensorDir};
use super::world::AntWorld;

fn toward(dir: SensorDir) -> Rotate {
    match dir {
        SensorDir::Left => Rotate::Left,
        SensorDir::Front => Rotate::None,
        SensorDir::Right => Rotate::Right,
    }
}

/// The library model's ant, expressed in the action vocabulary.
///
/// Carrying: drop at the nest, otherwise deposit pheromone and climb the nest scent.
/// Searching: pick up food underfoot, otherwise climb the pheromone gradient while the
/// pheromone underfoot is inside the follow window, otherwise walk on. The library's
/// wiggle and about-face on pick-up are applied by [`super::MotorProfile::LIBRARY`].
pub fn rule_based_ant_policy(world: &AntWorld, ant: usize) -> AntAction {
    let a = &world.ants[ant];
    let cell = world.cell_under(ant);
    let readings = sense_readings(world, a);
    let mut action = AntAction { move_forward: true, ..AntAction::IDLE };
    if a.carrying {
        if cell.is_nest {
            action.drop_food = true;
        } else {
            action.drop_pheromone = true;
            action.rotate = toward(strongest(&readings.nest_scent));
        }
    } else if cell.food > 0 {
        action.pick_up_food = true;
    } else {
        let [lo, hi] = world.params.follow_window;
        if cell.pheromone >= lo && cell.pheromone < hi {
            action.rotate = toward(strongest(&readings.pheromone));
        }
    }
    action
}

/// Direct implementation of the deployed ant prompt's rules on a categorical perception.
///
/// Carrying: follow the stronger nest scent, keep dropping pheromone, drop food at the nest.
/// Searching: pick up food (marking the source), else follow the highest pheromone,
/// else move on with a random rotation.
pub fn prompt_decision_table(p: &AntPerception) -> AntAction {
    let mut action = AntAction { move_forward: true, ..AntAction::IDLE };
    if p.carrying {
        action.rotate = toward(p.stronger_nest_scent_dir);
        action.drop_pheromone = true;
        action.drop_food = p.nest_presence;
    } else if p.food_here > 0 {
        action.pick_up_food = true;
        action.drop_pheromone = true;
    } else {
        action.rotate = match p.highest_pheromone_dir {
            PheromoneDir::Left => Rotate::Left,
            PheromoneDir::Front => Rotate::None,
            PheromoneDir::Right => Rotate::Right,
            PheromoneDir::None => Rotate::Random,
        };
    }
    action
}
