use serde::Serialize;

use super::stats::{mean, std_dev};
use crate::sim::{subtract_headings, Heading, WorldGeometry};

pub const COLLISION_DISTANCE: f64 = 1.0;
pub const NEIGHBOR_DISTANCE: f64 = 5.0;
pub const NEIGHBOR_HEADING: f64 = 15.0;

/// Which birds a heading-difference series is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BirdGroup {
    /// Every bird of an all-rule-based flock.
    Netlogo,
    /// Rule-based birds of a mixed flock.
    HybridRule,
    /// Prompt-driven birds of a mixed flock.
    HybridLlm,
}

impl BirdGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            BirdGroup::Netlogo => "netlogo",
            BirdGroup::HybridRule => "hybrid_rule",
            BirdGroup::HybridLlm => "hybrid_llm",
        }
    }
}

/// Mean and population std of `|subtract_headings(h_j, h_g)|` over every `g` in `members`
/// and every other bird `j` of the flock.
pub fn heading_difference(headings: &[Heading], members: &[usize]) -> Option<(f64, f64)> {
    let diffs: Vec<f64> = members
        .iter()
        .flat_map(|&g| {
            headings
                .iter()
                .enumerate()
                .filter(move |&(j, _)| j != g)
                .map(move |(_, &h)| subtract_headings(h, headings[g]).abs())
        })
        .collect();
    Some((mean(&diffs)?, std_dev(&diffs, 0)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseStats {
    /// Unordered pairs at distance <= 1.
    pub collisions: usize,
    /// Per bird: others at 1 < d <= 5 with heading difference <= 15 degrees.
    pub neighbor_counts: Vec<usize>,
}

impl PairwiseStats {
    pub fn mean_neighbors(&self, members: &[usize]) -> Option<f64> {
        let v: Vec<f64> = members.iter().map(|&i| self.neighbor_counts[i] as f64).collect();
        mean(&v)
    }
}

pub fn pairwise_stats(geometry: &WorldGeometry, positions: &[(f64, f64)], headings: &[Heading]) -> PairwiseStats {
    let n = positions.len();
    let mut stats = PairwiseStats { collisions: 0, neighbor_counts: vec![0; n] };
    for i in 0..n {
        for j in i + 1..n {
            let d = geometry.distance(positions[i], positions[j]);
            if d <= COLLISION_DISTANCE {
                stats.collisions += 1;
            } else if d <= NEIGHBOR_DISTANCE && subtract_headings(headings[i], headings[j]).abs() <= NEIGHBOR_HEADING {
                stats.neighbor_counts[i] += 1;
                stats.neighbor_counts[j] += 1;
            }
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: f64) -> Heading {
        Heading::new(d).unwrap()
    }

    #[test]
    fn identical_and_antipodal() {
        assert_eq!(heading_difference(&[h(10.0); 4], &[0, 1, 2, 3]), Some((0.0, 0.0)));
        assert_eq!(heading_difference(&[h(0.0), h(180.0)], &[0]), Some((180.0, 0.0)));
        assert_eq!(heading_difference(&[h(0.0)], &[0]), None);
    }

    #[test]
    fn collision_is_inclusive() {
        let g = WorldGeometry::torus(35);
        let s = pairwise_stats(&g, &[(0.0, 0.0), (1.0, 0.0)], &[h(0.0), h(0.0)]);
        assert_eq!((s.collisions, s.neighbor_counts.clone()), (1, vec![0, 0]));
    }

    #[test]
    fn mutual_neighbors() {
        let g = WorldGeometry::torus(35);
        let s = pairwise_stats(&g, &[(0.0, 0.0), (0.0, 3.0)], &[h(0.0), h(14.0)]);
        assert_eq!((s.collisions, s.neighbor_counts.clone()), (0, vec![1, 1]));
        let s = pairwise_stats(&g, &[(34.0, 0.0), (-34.0, 0.0)], &[h(0.0), h(350.0)]);
        assert_eq!(s.neighbor_counts, vec![1, 1], "across the seam");
        assert_eq!(s.mean_neighbors(&[]), None);
    }
}
