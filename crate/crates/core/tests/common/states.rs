//! Random single-step flocking states and the decision boundaries where prompt
//! quantization (whole-degree headings, 2-decimal coordinates) can flip a choice.

use rand::Rng;
use swarm_llm::flock::{FlockParams, NeighborObs};
use swarm_llm::sim::{circular_mean, subtract_headings, turn_at_most, Heading};

/// Degrees from the ±180 turn-direction seam.
const SEAM: f64 = 2.0;
/// Patch units from the separation threshold, or between the two nearest neighbors.
const DIST: f64 = 0.02;
/// Mean resultant length below which a circular mean is ill-conditioned.
const WEAK: f64 = 0.1;
/// Resultant length below which an unsaturated turn is treated as unstable.
const SOFT: f64 = 0.5;

fn h(d: f64) -> Heading {
    Heading::new(d).expect("finite")
}

/// Heading uniform in [0, 360), 0..=5 neighbors uniform in the vision disc, nearest first.
pub fn random_state<R: Rng>(rng: &mut R, vision: f64) -> (Heading, Vec<NeighborObs>) {
    let heading = h(rng.random_range(0.0..360.0));
    let k = rng.random_range(0..6);
    let mut neighbors: Vec<NeighborObs> = (0..k)
        .map(|id| {
            let r = rng.random_range(0.0..vision);
            let a = rng.random_range(0.0..std::f64::consts::TAU);
            NeighborObs { id: id + 1, rel_x: r * a.sin(), rel_y: r * a.cos(), heading: h(rng.random_range(0.0..360.0)) }
        })
        .collect();
    neighbors.sort_by(|a, b| a.distance().total_cmp(&b.distance()));
    (heading, neighbors)
}

/// The state as it reads back from the rendered prompt.
pub fn quantized(heading: Heading, neighbors: &[NeighborObs]) -> (Heading, Vec<NeighborObs>) {
    let deg = |x: Heading| h(x.whole_degrees() as f64);
    let c = |v: f64| {
        let r = (v * 100.0).round() / 100.0;
        if r == 0.0 { 0.0 } else { r }
    };
    let n = neighbors
        .iter()
        .map(|o| NeighborObs { id: o.id, rel_x: c(o.rel_x), rel_y: c(o.rel_y), heading: deg(o.heading) })
        .collect();
    (deg(heading), n)
}

fn resultant(angles: &[Heading]) -> f64 {
    let (x, y) = angles.iter().fold((0.0, 0.0), |(x, y), a| {
        let (ux, uy) = a.unit_vector();
        (x + ux, y + uy)
    });
    x.hypot(y) / angles.len() as f64
}

/// Decision boundaries `neighbors` (nearest first) sits near. Empty when the state is
/// well inside one regime.
pub fn boundary_reasons(heading: Heading, neighbors: &[NeighborObs], p: &FlockParams) -> Vec<&'static str> {
    let mut out = Vec::new();
    let Some(first) = neighbors.first() else {
        return out;
    };
    let d0 = first.distance();
    if (d0 - p.minimum_separation).abs() < DIST {
        out.push("separation threshold");
    }
    if neighbors.get(1).is_some_and(|n| n.distance() - d0 < DIST) {
        out.push("nearest tie");
    }
    if d0 < p.minimum_separation {
        let away = subtract_headings(heading, first.heading).abs();
        if away < p.max_separate_turn + 1.0 {
            out.push("separation below cap");
        }
        if 180.0 - away < SEAM {
            out.push("separation seam");
        }
        return out;
    }

    let headings: Vec<Heading> = neighbors.iter().map(|n| n.heading).collect();
    let bearings: Vec<Heading> = neighbors.iter().filter_map(|n| n.bearing()).collect();
    let (rh, rb) = (resultant(&headings), resultant(&bearings));
    if rh < WEAK {
        out.push("weak heading mean");
    }
    if rb < WEAK {
        out.push("weak bearing mean");
    }
    let mut aligned = heading;
    if let Some(avg) = circular_mean(headings.iter().copied()) {
        let t = subtract_headings(avg, heading).abs();
        if 180.0 - t < SEAM {
            out.push("align seam");
        }
        if t < p.max_align_turn + 1.0 && rh < SOFT {
            out.push("align below cap, weak mean");
        }
        aligned = turn_at_most(heading, avg, p.max_align_turn).expect("cap >= 0");
    }
    if let Some(center) = circular_mean(bearings.iter().copied()) {
        let t = subtract_headings(center, aligned).abs();
        if 180.0 - t < SEAM {
            out.push("cohere seam");
        }
        if t < p.max_cohere_turn + 1.0 && rb < SOFT {
            out.push("cohere below cap, weak mean");
        }
    }
    out
}
