use serde::{Deserialize, Serialize};

use super::Heading;

/// Square patch world spanning `-half_extent..=half_extent` patches per axis.
///
/// Patch centers sit on integer coordinates, so continuous positions range over
/// `[-half_extent - 0.5, half_extent + 0.5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorldGeometry {
    pub half_extent: i32,
    pub wrap: bool,
}

impl WorldGeometry {
    pub const fn bounded(half_extent: i32) -> Self {
        Self { half_extent, wrap: false }
    }

    pub const fn torus(half_extent: i32) -> Self {
        Self { half_extent, wrap: true }
    }

    /// Number of patches along one axis.
    pub fn side(&self) -> usize {
        (2 * self.half_extent + 1) as usize
    }

    pub fn patch_count(&self) -> usize {
        self.side() * self.side()
    }

    fn min_edge(&self) -> f64 {
        -(self.half_extent as f64) - 0.5
    }

    fn width(&self) -> f64 {
        self.side() as f64
    }

    /// Patch containing the continuous point, or `None` outside a bounded world.
    pub fn patch_at(&self, x: f64, y: f64) -> Option<(i32, i32)> {
        let (x, y) = if self.wrap { self.wrap_point(x, y) } else { (x, y) };
        let px = x.round() as i64;
        let py = y.round() as i64;
        let h = self.half_extent as i64;
        if px < -h || px > h || py < -h || py > h {
            None
        } else {
            Some((px as i32, py as i32))
        }
    }

    /// Row-major index of a patch.
    pub fn index(&self, patch: (i32, i32)) -> usize {
        let side = self.side();
        let col = (patch.0 + self.half_extent) as usize;
        let row = (patch.1 + self.half_extent) as usize;
        row * side + col
    }

    pub fn patch_of_index(&self, idx: usize) -> (i32, i32) {
        let side = self.side();
        (
            (idx % side) as i32 - self.half_extent,
            (idx / side) as i32 - self.half_extent,
        )
    }

    /// Folds a point onto the torus. Identity for points already inside.
    pub fn wrap_point(&self, x: f64, y: f64) -> (f64, f64) {
        let fold = |v: f64| {
            let r = (v - self.min_edge()).rem_euclid(self.width()) + self.min_edge();
            if r >= -self.min_edge() {
                self.min_edge()
            } else {
                r
            }
        };
        (fold(x), fold(y))
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let lo = self.min_edge();
        let hi = -lo;
        x >= lo && x < hi && y >= lo && y < hi
    }

    /// Displacement from `from` to `to`; the shortest way around on a torus.
    pub fn displacement(&self, from: (f64, f64), to: (f64, f64)) -> (f64, f64) {
        let mut dx = to.0 - from.0;
        let mut dy = to.1 - from.1;
        if self.wrap {
            let w = self.width();
            dx -= w * (dx / w).round();
            dy -= w * (dy / w).round();
        }
        (dx, dy)
    }

    pub fn distance(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        let (dx, dy) = self.displacement(a, b);
        dx.hypot(dy)
    }

    /// Point `distance` units ahead along `heading`, wrapped on a torus.
    pub fn ahead(&self, pos: (f64, f64), heading: Heading, distance: f64) -> (f64, f64) {
        let (ux, uy) = heading.unit_vector();
        let p = (pos.0 + ux * distance, pos.1 + uy * distance);
        if self.wrap {
            self.wrap_point(p.0, p.1)
        } else {
            p
        }
    }

    /// Whether the patch one unit ahead exists.
    pub fn can_move(&self, pos: (f64, f64), heading: Heading, distance: f64) -> bool {
        let (x, y) = self.ahead(pos, heading, distance);
        self.wrap || self.patch_at(x, y).is_some()
    }
}
