//! Shared simulation primitives: ticks, seeded random streams, world geometry
//! and compass-angle arithmetic.

mod geometry;
mod heading;
mod rng;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use geometry::WorldGeometry;
pub use heading::{
    circular_mean, normalize_heading, subtract_headings, turn_at_most, turn_by_at_most, Heading,
};
pub use rng::{Purpose, SeededRng, WORLD_STREAM};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Simulation step counter.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Tick(pub u64);

impl Tick {
    pub fn next(self) -> Tick {
        Tick(self.0 + 1)
    }
}

impl std::fmt::Display for Tick {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Agent polling order for one tick, shuffled from the schedule stream.
pub fn polled_order<R: Rng + ?Sized>(population: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..population).collect();
    order.shuffle(rng);
    order
}
