use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sim::{Heading, Purpose, SeededRng, WorldGeometry};

/// Boids parameters. Turn limits are degrees per tick, distances are patch units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlockParams {
    pub max_separate_turn: f64,
    pub max_align_turn: f64,
    pub max_cohere_turn: f64,
    pub minimum_separation: f64,
    pub vision: f64,
    pub speed: f64,
    pub half_extent: i32,
}

impl Default for FlockParams {
    fn default() -> Self {
        Self {
            max_separate_turn: 1.5,
            max_align_turn: 5.0,
            max_cohere_turn: 3.0,
            minimum_separation: 1.0,
            vision: 5.0,
            speed: 1.0,
            half_extent: 35,
        }
    }
}

impl FlockParams {
    pub fn validate(&self) -> Result<(), String> {
        let named = [
            ("flocking.max_separate_turn", self.max_separate_turn),
            ("flocking.max_align_turn", self.max_align_turn),
            ("flocking.max_cohere_turn", self.max_cohere_turn),
            ("flocking.minimum_separation", self.minimum_separation),
            ("flocking.vision", self.vision),
            ("flocking.speed", self.speed),
        ];
        if let Some((key, _)) = named.iter().find(|(_, v)| !(v.is_finite() && *v >= 0.0)) {
            return Err(format!("{key} must be a finite non-negative number"));
        }
        if self.vision <= 0.0 {
            return Err("flocking.vision must be > 0".into());
        }
        if self.minimum_separation >= self.vision {
            return Err("flocking.minimum_separation must be smaller than flocking.vision".into());
        }
        if self.half_extent < 1 {
            return Err("flocking.half_extent must be >= 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BirdState {
    pub id: usize,
    pub pos: (f64, f64),
    pub heading: Heading,
    pub is_llm: bool,
}

/// A flockmate as seen from the observer: torus-shortest displacement (x east, y north).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighborObs {
    pub id: usize,
    pub rel_x: f64,
    pub rel_y: f64,
    pub heading: Heading,
}

impl NeighborObs {
    pub fn distance(&self) -> f64 {
        self.rel_x.hypot(self.rel_y)
    }

    /// Compass bearing from the observer toward this neighbor.
    pub fn bearing(&self) -> Option<Heading> {
        Heading::from_vector(self.rel_x, self.rel_y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlockWorld {
    pub params: FlockParams,
    pub geometry: WorldGeometry,
    pub birds: Vec<BirdState>,
}

impl FlockWorld {
    /// Scatters `population` birds uniformly with uniform headings; the first
    /// `llm_count` ids are not marked, callers set `is_llm` per controller.
    pub fn new(params: FlockParams, population: usize, rng: &SeededRng) -> Self {
        let geometry = WorldGeometry::torus(params.half_extent);
        let edge = params.half_extent as f64 + 0.5;
        let birds = (0..population)
            .map(|id| {
                let mut r = rng.stream(id as u64, Purpose::Placement);
                let x = r.random_range(-edge..edge);
                let y = r.random_range(-edge..edge);
                let heading = Heading::new(r.random_range(0.0..360.0)).expect("finite heading");
                BirdState { id, pos: geometry.wrap_point(x, y), heading, is_llm: false }
            })
            .collect();
        Self { params, geometry, birds }
    }

    pub fn headings(&self) -> Vec<Heading> {
        self.birds.iter().map(|b| b.heading).collect()
    }

    pub fn positions(&self) -> Vec<(f64, f64)> {
        self.birds.iter().map(|b| b.pos).collect()
    }
}

/// Birds within `vision` (inclusive) of `world.birds[bird]`, nearest first, self excluded.
pub fn neighbors_of(world: &FlockWorld, bird: usize, vision: f64) -> Vec<NeighborObs> {
    let me = &world.birds[bird];
    let mut out: Vec<(f64, NeighborObs)> = world
        .birds
        .iter()
        .filter(|b| b.id != me.id)
        .filter_map(|b| {
            let (rel_x, rel_y) = world.geometry.displacement(me.pos, b.pos);
            let d = rel_x.hypot(rel_y);
            (d <= vision).then_some((d, NeighborObs { id: b.id, rel_x, rel_y, heading: b.heading }))
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.id.cmp(&b.1.id)));
    out.into_iter().map(|(_, n)| n).collect()
}

/// Sets the new heading, then advances `speed` units with torus wrap.
pub fn apply_bird_decision(world: &mut FlockWorld, bird: usize, new_heading: Heading) {
    let speed = world.params.speed;
    let geometry = world.geometry;
    let b = &mut world.birds[bird];
    b.heading = new_heading;
    b.pos = geometry.ahead(b.pos, new_heading, speed);
}
