use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sim::{Heading, Purpose, SeededRng, WorldGeometry};

/// Parameters of the foraging world. Defaults follow the NetLogo Ants library model,
/// except evaporation, which is halved to 5% per tick.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AntParams {
    pub half_extent: i32,
    pub nest_radius: f64,
    pub food_radius: f64,
    /// Pheromone added per deposit (a.u.).
    pub deposit: f64,
    /// Fraction of each cell's pheromone shared equally with its 8 neighbors per tick.
    pub diffusion: f64,
    /// Fraction of pheromone lost per tick, applied after diffusion.
    pub evaporation: f64,
    /// Readings below this are "no signal"; cells below it are cleared.
    pub sensing_floor: f64,
    /// Rule-based ants follow the gradient only while the pheromone under them is in `[lo, hi)`.
    pub follow_window: [f64; 2],
    /// Degrees turned by an LLM-style `rotate: left|right`.
    pub rotation_step: f64,
    /// Rule-based wiggle: right by `random(n)` then left by `random(n)` degrees.
    pub wiggle_max: u32,
    /// Ant `i` first acts on tick `i + 1`, as in the library model.
    pub staggered_departure: bool,
    /// Inclusive range of food units placed on each food cell.
    pub food_units: [u32; 2],
}

impl Default for AntParams {
    fn default() -> Self {
        Self {
            half_extent: 35,
            nest_radius: 5.0,
            food_radius: 5.0,
            deposit: 60.0,
            diffusion: 0.5,
            evaporation: 0.05,
            sensing_floor: 0.05,
            follow_window: [0.05, 2.0],
            rotation_step: 45.0,
            wiggle_max: 40,
            staggered_departure: true,
            food_units: [1, 2],
        }
    }
}

impl AntParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.half_extent < 1 {
            return Err("ants.half_extent must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.diffusion) {
            return Err("ants.diffusion must lie in [0, 1]".into());
        }
        if !(0.0..=1.0).contains(&self.evaporation) {
            return Err("ants.evaporation must lie in [0, 1]".into());
        }
        if self.deposit < 0.0 || self.sensing_floor < 0.0 || self.rotation_step < 0.0 {
            return Err("ants.deposit, ants.sensing_floor and ants.rotation_step must be >= 0".into());
        }
        if self.follow_window[0] > self.follow_window[1] {
            return Err("ants.follow_window must be [lo, hi] with lo <= hi".into());
        }
        if self.food_units[0] > self.food_units[1] {
            return Err("ants.food_units must be [lo, hi] with lo <= hi".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchCell {
    pub pheromone: f64,
    pub food: u32,
    pub is_nest: bool,
    pub nest_scent: f64,
    pub food_source_id: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoodPatchSpec {
    pub id: u8,
    pub center: (f64, f64),
    pub radius: f64,
    pub units_per_cell: [u32; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntState {
    pub id: usize,
    pub pos: (f64, f64),
    pub heading: Heading,
    pub carrying: bool,
    pub picked_from_patch: Option<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntWorld {
    pub params: AntParams,
    pub geometry: WorldGeometry,
    pub patches: Vec<PatchCell>,
    pub ants: Vec<AntState>,
    pub food_patches: Vec<FoodPatchSpec>,
    pub colony_food: u64,
    pub initial_food: u64,
    scratch: Vec<f64>,
}

/// Food patch centers as fractions of the half extent, before relabelling by nest distance.
const FOOD_CENTERS: [(f64, f64); 3] = [(0.6, 0.0), (-0.6, -0.6), (-0.8, 0.8)];

impl AntWorld {
    /// Builds the nest, the three food patches and `population` ants at the nest.
    pub fn new(params: AntParams, population: usize, rng: &SeededRng) -> Self {
        let geometry = WorldGeometry::bounded(params.half_extent);
        let e = params.half_extent as f64;
        let mut centers: Vec<(f64, f64)> =
            FOOD_CENTERS.iter().map(|&(fx, fy)| (fx * e, fy * e)).collect();
        centers.sort_by(|a, b| a.0.hypot(a.1).total_cmp(&b.0.hypot(b.1)));
        let food_patches: Vec<FoodPatchSpec> = centers
            .iter()
            .enumerate()
            .map(|(i, &center)| FoodPatchSpec {
                id: i as u8 + 1,
                center,
                radius: params.food_radius,
                units_per_cell: params.food_units,
            })
            .collect();

        let mut food_rng = rng.world_stream(Purpose::FoodSetup);
        let mut initial_food = 0u64;
        let patches = (0..geometry.patch_count())
            .map(|idx| {
                let (px, py) = geometry.patch_of_index(idx);
                let (x, y) = (px as f64, py as f64);
                let dist = x.hypot(y);
                let food_source_id = food_patches
                    .iter()
                    .find(|f| (x - f.center.0).hypot(y - f.center.1) < f.radius)
                    .map(|f| f.id);
                let food = match food_source_id {
                    Some(_) => food_rng.random_range(params.food_units[0]..=params.food_units[1]),
                    None => 0,
                };
                initial_food += food as u64;
                PatchCell {
                    pheromone: 0.0,
                    food,
                    is_nest: dist < params.nest_radius,
                    nest_scent: 200.0 - dist,
                    food_source_id,
                }
            })
            .collect();

        let ants = (0..population)
            .map(|id| {
                let mut placement = rng.stream(id as u64, Purpose::Placement);
                let heading = Heading::new(placement.random_range(0..360) as f64)
                    .expect("integer heading is finite");
                AntState {
                    id,
                    pos: (0.0, 0.0),
                    heading,
                    carrying: false,
                    picked_from_patch: None,
                }
            })
            .collect();

        Self {
            scratch: vec![0.0; geometry.patch_count()],
            params,
            geometry,
            patches,
            ants,
            food_patches,
            colony_food: 0,
            initial_food,
        }
    }

    pub fn cell_index_at(&self, pos: (f64, f64)) -> Option<usize> {
        self.geometry
            .patch_at(pos.0, pos.1)
            .map(|p| self.geometry.index(p))
    }

    /// Cell under an ant. Ants never leave the bounded world.
    pub fn cell_under(&self, ant: usize) -> &PatchCell {
        let idx = self
            .cell_index_at(self.ants[ant].pos)
            .expect("ant position is inside the world");
        &self.patches[idx]
    }

    pub fn cell_under_mut(&mut self, ant: usize) -> &mut PatchCell {
        let idx = self
            .cell_index_at(self.ants[ant].pos)
            .expect("ant position is inside the world");
        &mut self.patches[idx]
    }

    pub fn food_remaining(&self) -> u64 {
        self.patches.iter().map(|c| c.food as u64).sum()
    }

    pub fn food_carried(&self) -> u64 {
        self.ants.iter().filter(|a| a.carrying).count() as u64
    }

    pub fn total_pheromone(&self) -> f64 {
        self.patches.iter().map(|c| c.pheromone).sum()
    }

    /// Adds `amount` of pheromone at a patch. Used by tests and scenario setup.
    pub fn deposit_at(&mut self, patch: (i32, i32), amount: f64) {
        let idx = self.geometry.index(patch);
        self.patches[idx].pheromone += amount;
    }
}

/// Once-per-tick pheromone update: diffusion to the 8 neighbors, then evaporation,
/// then clearing of cells below the sensing floor.
///
/// On the bounded world an edge cell keeps the shares addressed to missing neighbors,
/// so diffusion alone conserves the total.
pub fn env_update_ants(world: &mut AntWorld) {
    let g = world.geometry;
    let h = g.half_extent;
    let rate = world.params.diffusion;
    let keep = 1.0 - world.params.evaporation;
    let floor = world.params.sensing_floor;

    let next = &mut world.scratch;
    next.iter_mut().for_each(|v| *v = 0.0);
    for (idx, cell) in world.patches.iter().enumerate() {
        let amount = cell.pheromone;
        if amount == 0.0 {
            continue;
        }
        let share = amount * rate / 8.0;
        let (px, py) = g.patch_of_index(idx);
        let mut given = 0.0;
        for dy in -1..=1 {
            for dx in -1..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let (nx, ny) = (px + dx, py + dy);
                if nx < -h || nx > h || ny < -h || ny > h {
                    continue;
                }
                next[g.index((nx, ny))] += share;
                given += share;
            }
        }
        next[idx] += amount - given;
    }
    for (cell, &v) in world.patches.iter_mut().zip(next.iter()) {
        let v = v * keep;
        cell.pheromone = if v < floor { 0.0 } else { v };
    }
}
