use serde::{Deserialize, Serialize};

use super::world::{AntState, AntWorld};

/// One of the three forward sensor cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SensorDir {
    Left,
    Front,
    Right,
}

impl SensorDir {
    /// Sensor angle relative to the ant's heading.
    pub fn angle(self) -> f64 {
        match self {
            SensorDir::Left => -45.0,
            SensorDir::Front => 0.0,
            SensorDir::Right => 45.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SensorDir::Left => "Left",
            SensorDir::Front => "Front",
            SensorDir::Right => "Right",
        }
    }
}

/// Direction of the strongest pheromone reading; `None` when nothing reaches the sensing floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PheromoneDir {
    Left,
    Front,
    Right,
    None,
}

impl PheromoneDir {
    pub fn label(self) -> &'static str {
        match self {
            PheromoneDir::Left => "Left",
            PheromoneDir::Front => "Front",
            PheromoneDir::Right => "Right",
            PheromoneDir::None => "None",
        }
    }
}

impl From<SensorDir> for PheromoneDir {
    fn from(d: SensorDir) -> Self {
        match d {
            SensorDir::Left => PheromoneDir::Left,
            SensorDir::Front => PheromoneDir::Front,
            SensorDir::Right => PheromoneDir::Right,
        }
    }
}

/// What an ant reports to its controller: categorical directions and integer food only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AntPerception {
    pub highest_pheromone_dir: PheromoneDir,
    pub nest_presence: bool,
    pub stronger_nest_scent_dir: SensorDir,
    pub food_here: u32,
    pub carrying: bool,
}

/// Raw sensor values in `[left, front, right]` order.
///
/// Only the rule-based controller and the numeric historical prompt templates use these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensorReadings {
    pub pheromone: [f64; 3],
    pub nest_scent: [f64; 3],
    pub pheromone_here: f64,
}

impl SensorReadings {
    pub fn get(values: &[f64; 3], dir: SensorDir) -> f64 {
        match dir {
            SensorDir::Left => values[0],
            SensorDir::Front => values[1],
            SensorDir::Right => values[2],
        }
    }
}

const SENSORS: [SensorDir; 3] = [SensorDir::Left, SensorDir::Front, SensorDir::Right];

/// Direction of the largest of `[left, front, right]`; ties prefer front, then left.
pub fn strongest(values: &[f64; 3]) -> SensorDir {
    let [left, front, right] = *values;
    if left > front && left >= right {
        SensorDir::Left
    } else if right > front && right > left {
        SensorDir::Right
    } else {
        SensorDir::Front
    }
}

/// Samples pheromone and nest scent one patch ahead at -45, 0 and +45 degrees.
/// Points off the world read 0.
pub fn sense_readings(world: &AntWorld, ant: &AntState) -> SensorReadings {
    let mut pheromone = [0.0; 3];
    let mut nest_scent = [0.0; 3];
    for (i, dir) in SENSORS.iter().enumerate() {
        let p = world.geometry.ahead(ant.pos, ant.heading.rotated(dir.angle()), 1.0);
        if let Some(idx) = world.cell_index_at(p) {
            pheromone[i] = world.patches[idx].pheromone;
            nest_scent[i] = world.patches[idx].nest_scent;
        }
    }
    let pheromone_here = world.cell_index_at(ant.pos).map_or(0.0, |i| world.patches[i].pheromone);
    SensorReadings { pheromone, nest_scent, pheromone_here }
}

pub fn perceive(world: &AntWorld, ant: &AntState, readings: &SensorReadings) -> AntPerception {
    let floor = world.params.sensing_floor;
    let highest_pheromone_dir = if readings.pheromone.iter().all(|&v| v < floor) {
        PheromoneDir::None
    } else {
        strongest(&readings.pheromone).into()
    };
    let cell = world.cell_index_at(ant.pos).map(|i| &world.patches[i]);
    AntPerception {
        highest_pheromone_dir,
        nest_presence: cell.is_some_and(|c| c.is_nest),
        stronger_nest_scent_dir: strongest(&readings.nest_scent),
        food_here: cell.map_or(0, |c| c.food),
        carrying: ant.carrying,
    }
}

/// Categorical perception of `world.ants[ant]`.
pub fn sense_ant(world: &AntWorld, ant: usize) -> AntPerception {
    let a = &world.ants[ant];
    perceive(world, a, &sense_readings(world, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ants::world::AntParams;
    use crate::sim::{Heading, SeededRng};

    fn world_with_one_ant(heading: f64) -> AntWorld {
        let mut w = AntWorld::new(AntParams::default(), 1, &SeededRng::new(3));
        w.ants[0].heading = Heading::new(heading).unwrap();
        w
    }

    #[test]
    fn at_nest_center_nothing_sensed() {
        let w = world_with_one_ant(0.0);
        let p = sense_ant(&w, 0);
        assert_eq!(p.highest_pheromone_dir, PheromoneDir::None);
        assert!(p.nest_presence);
        assert_eq!(p.food_here, 0);
        assert!(!p.carrying);
        // (0,1) scores 199; the diagonals (±1,1) score 200 - sqrt 2
        assert_eq!(p.stronger_nest_scent_dir, SensorDir::Front);
    }

    #[test]
    fn deposit_in_left_sensor_cell_is_reported_left() {
        let mut w = world_with_one_ant(0.0);
        // heading north, left sensor at -45 degrees lands on (-0.71, 0.71) -> patch (-1, 1)
        w.deposit_at((-1, 1), 5.0);
        assert_eq!(sense_ant(&w, 0).highest_pheromone_dir, PheromoneDir::Left);
        w.deposit_at((1, 1), 5.0);
        assert_eq!(sense_ant(&w, 0).highest_pheromone_dir, PheromoneDir::Left, "left wins a left/right tie");
        w.deposit_at((0, 1), 5.0);
        assert_eq!(sense_ant(&w, 0).highest_pheromone_dir, PheromoneDir::Front, "front wins ties");
    }

    #[test]
    fn below_floor_reads_as_none() {
        let mut w = world_with_one_ant(90.0);
        w.deposit_at((1, 0), 0.01);
        assert_eq!(sense_ant(&w, 0).highest_pheromone_dir, PheromoneDir::None);
    }

    #[test]
    fn nest_scent_points_home() {
        let mut w = world_with_one_ant(90.0);
        w.ants[0].pos = (10.0, 0.0);
        // heading directly away: the diagonal patches are farther than the one ahead
        assert_eq!(sense_ant(&w, 0).stronger_nest_scent_dir, SensorDir::Front);
        w.ants[0].heading = Heading::new(315.0).unwrap();
        assert_eq!(sense_ant(&w, 0).stronger_nest_scent_dir, SensorDir::Left);
        w.ants[0].heading = Heading::new(225.0).unwrap();
        assert_eq!(sense_ant(&w, 0).stronger_nest_scent_dir, SensorDir::Right);
    }

    #[test]
    fn off_world_sensors_read_zero() {
        let mut w = world_with_one_ant(0.0);
        w.ants[0].pos = (0.0, 35.0);
        let r = sense_readings(&w, &w.ants[0]);
        assert_eq!(r.nest_scent, [0.0, 0.0, 0.0]);
    }
}
