//! Compass-convention angle arithmetic.
//!
//! Headings are measured in degrees with 0 pointing north and 90 pointing
//! east, increasing clockwise. Every [`Heading`] is normalized into `[0, 360)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::SimError;

/// A compass heading in degrees, always in `[0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Heading(f64);

impl Heading {
    pub const NORTH: Heading = Heading(0.0);
    pub const EAST: Heading = Heading(90.0);
    pub const SOUTH: Heading = Heading(180.0);
    pub const WEST: Heading = Heading(270.0);

    /// Normalizes `degrees` into `[0, 360)`.
    pub fn new(degrees: f64) -> Result<Self, SimError> {
        normalize_heading(degrees)
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    /// Heading turned clockwise by `degrees` (negative turns counterclockwise).
    pub fn rotated(self, degrees: f64) -> Heading {
        Heading(wrap_360(self.0 + degrees))
    }

    /// Unit displacement `(dx, dy)` with x east and y north.
    pub fn unit_vector(self) -> (f64, f64) {
        let rad = self.0.to_radians();
        (rad.sin(), rad.cos())
    }

    /// Compass bearing of the displacement `(dx, dy)`, or `None` for the zero vector.
    pub fn from_vector(dx: f64, dy: f64) -> Option<Heading> {
        if dx == 0.0 && dy == 0.0 {
            return None;
        }
        Some(Heading(wrap_360(dx.atan2(dy).to_degrees())))
    }

    /// Heading rounded to whole degrees, as it appears in prompts (360 folds to 0).
    pub fn whole_degrees(self) -> u32 {
        let r = self.0.round() as u32;
        if r >= 360 {
            r - 360
        } else {
            r
        }
    }
}

impl TryFrom<f64> for Heading {
    type Error = SimError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        normalize_heading(value)
    }
}

impl From<Heading> for f64 {
    fn from(h: Heading) -> f64 {
        h.0
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn wrap_360(degrees: f64) -> f64 {
    let r = degrees.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360 for tiny negative inputs
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}

/// Normalizes an arbitrary finite angle into a [`Heading`].
pub fn normalize_heading(degrees: f64) -> Result<Heading, SimError> {
    if !degrees.is_finite() {
        return Err(SimError::InvalidArgument(format!(
            "heading must be finite, got {degrees}"
        )));
    }
    Ok(Heading(wrap_360(degrees)))
}

/// Signed shortest turn from `current` to `target`, in `(-180, 180]`.
///
/// Positive values are clockwise turns.
pub fn subtract_headings(target: Heading, current: Heading) -> f64 {
    let d = (target.0 - current.0).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

/// Applies a signed `turn`, clamped in magnitude to `max_turn`.
pub fn turn_by_at_most(current: Heading, turn: f64, max_turn: f64) -> Result<Heading, SimError> {
    if max_turn.is_nan() || max_turn < 0.0 {
        return Err(SimError::InvalidArgument(format!(
            "max_turn must be non-negative, got {max_turn}"
        )));
    }
    Ok(current.rotated(turn.clamp(-max_turn, max_turn)))
}

/// Turns from `current` toward `target` along the shortest path, by at most `max_turn` degrees.
pub fn turn_at_most(current: Heading, target: Heading, max_turn: f64) -> Result<Heading, SimError> {
    if max_turn.is_nan() || max_turn < 0.0 {
        return Err(SimError::InvalidArgument(format!(
            "max_turn must be non-negative, got {max_turn}"
        )));
    }
    let turn = subtract_headings(target, current);
    if turn.abs() <= max_turn {
        Ok(target)
    } else {
        Ok(current.rotated(max_turn.copysign(turn)))
    }
}

/// Circular mean of headings via summed unit vectors; `None` when the vectors cancel.
pub fn circular_mean<I: IntoIterator<Item = Heading>>(headings: I) -> Option<Heading> {
    let (sx, sy) = headings.into_iter().fold((0.0, 0.0), |(sx, sy), h| {
        let (x, y) = h.unit_vector();
        (sx + x, sy + y)
    });
    Heading::from_vector(sx, sy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(d: f64) -> Heading {
        Heading::new(d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_heading(360.0).unwrap().degrees(), 0.0);
        assert_eq!(normalize_heading(-10.0).unwrap().degrees(), 350.0);
        assert_eq!(normalize_heading(146.0).unwrap().degrees(), 146.0);
        assert_eq!(normalize_heading(-1e-18).unwrap().degrees(), 0.0);
    }

    #[test]
    fn normalize_rejects_non_finite() {
        assert!(normalize_heading(f64::NAN).is_err());
        assert!(normalize_heading(f64::INFINITY).is_err());
    }

    #[test]
    fn subtract_examples() {
        assert_eq!(subtract_headings(h(248.0), h(138.0)), 110.0);
        assert_eq!(subtract_headings(h(10.0), h(350.0)), 20.0);
        assert_eq!(subtract_headings(h(90.0), h(90.0)), 0.0);
        assert_eq!(subtract_headings(h(350.0), h(10.0)), -20.0);
        assert_eq!(subtract_headings(h(180.0), h(0.0)), 180.0);
        assert_eq!(subtract_headings(h(0.0), h(180.0)), 180.0);
    }

    #[test]
    fn turn_at_most_examples() {
        assert_eq!(turn_at_most(h(138.0), h(248.0), 5.0).unwrap().degrees(), 143.0);
        assert_eq!(turn_at_most(h(143.0), h(248.0), 3.0).unwrap().degrees(), 146.0);
        assert_eq!(turn_at_most(h(100.0), h(102.0), 5.0).unwrap().degrees(), 102.0);
        assert_eq!(turn_at_most(h(2.0), h(350.0), 5.0).unwrap().degrees(), 357.0);
    }

    #[test]
    fn negative_max_turn_rejected() {
        assert!(turn_at_most(h(0.0), h(10.0), -1.0).is_err());
        assert!(turn_by_at_most(h(0.0), 10.0, -1.0).is_err());
    }

    #[test]
    fn circular_mean_across_seam() {
        let m = circular_mean([h(350.0), h(10.0)]).unwrap();
        assert!(m.degrees() < 1e-9 || (360.0 - m.degrees()) < 1e-9);
        assert!(circular_mean([h(0.0), h(180.0)]).is_none_or(|m| m.degrees().is_finite()));
        assert!(circular_mean(std::iter::empty()).is_none());
    }

    #[test]
    fn whole_degrees_folds_360() {
        assert_eq!(h(359.7).whole_degrees(), 0);
        assert_eq!(h(138.2).whole_degrees(), 138);
    }

    proptest! {
        #[test]
        fn subtract_then_add_recovers_target(a in 0.0f64..360.0, b in 0.0f64..360.0) {
            let (a, b) = (h(a), h(b));
            let d = subtract_headings(a, b);
            prop_assert!(d > -180.0 && d <= 180.0);
            let back = b.rotated(d);
            prop_assert!(subtract_headings(back, a).abs() < 1e-9);
        }

        #[test]
        fn turn_never_overshoots(c in 0.0f64..360.0, t in 0.0f64..360.0, m in 0.0f64..200.0) {
            let (c, t) = (h(c), h(t));
            let r = turn_at_most(c, t, m).unwrap();
            prop_assert!(subtract_headings(t, r).abs() <= subtract_headings(t, c).abs() + 1e-9);
            prop_assert!(subtract_headings(r, c).abs() <= m + 1e-9);
        }
    }
}
