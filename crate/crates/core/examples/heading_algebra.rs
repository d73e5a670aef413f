//! Compass arithmetic: 0 is north, angles grow clockwise.
//!
//! ```text
//! cargo run --example heading_algebra
//! ```

use swarm_llm::sim::{circular_mean, normalize_heading, subtract_headings, turn_at_most, Heading};

fn h(d: f64) -> Heading {
    Heading::new(d).unwrap()
}

fn main() {
    for raw in [-10.0, 360.0, 725.5] {
        println!("normalize({raw}) = {}", normalize_heading(raw).unwrap().degrees());
    }

    // shortest signed turn, clockwise positive, in (-180, 180]
    println!("subtract(248, 138) = {}", subtract_headings(h(248.0), h(138.0)));
    println!("subtract(10, 350)  = {}", subtract_headings(h(10.0), h(350.0)));
    println!("subtract(0, 180)   = {}", subtract_headings(h(0.0), h(180.0)));

    let aligned = turn_at_most(h(138.0), h(248.0), 5.0).unwrap();
    let cohered = turn_at_most(aligned, h(248.0), 3.0).unwrap();
    println!("138 -> align (cap 5) -> {} -> cohere (cap 3) -> {}", aligned.degrees(), cohered.degrees());

    let m = circular_mean([h(350.0), h(20.0)]).unwrap();
    println!("circular mean of 350 and 20 = {:.1}", m.degrees());
    println!("circular mean of 0 and 180 = {:?}", circular_mean([h(0.0), h(180.0)]).map(|m| m.degrees()));
}
