use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use super::{Angle, Point2};
use crate::error::{Error, Result};

/// A square given by center, side length and rotation.
///
/// Vertex `k` sits at `center + (side/√2)·e^{i(rotation + π/4 + kπ/2)}`, so
/// rotation 0 is the axis-aligned square. The rotation is kept in `[0, π/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Square {
    pub center: Point2,
    pub side: f64,
    pub rotation: Angle,
}

impl Square {
    pub fn new(center: Point2, side: f64, rotation: f64) -> Result<Self> {
        if !(side > 0.0) || !side.is_finite() {
            return Err(Error::InvalidSide(side));
        }
        if !center.is_finite() || !rotation.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Square {
            center,
            side,
            rotation: Angle::from_radians(rotation).quarter_turn(),
        })
    }

    /// The square centered at `center` whose first vertex lies at distance
    /// `side/√2` in direction `first_vertex_angle`.
    pub fn from_first_vertex_angle(center: Point2, side: f64, first_vertex_angle: f64) -> Result<Self> {
        Square::new(center, side, first_vertex_angle - FRAC_PI_4)
    }

    pub fn circumradius(&self) -> f64 {
        self.side * FRAC_1_SQRT_2
    }

    /// The four vertices, counterclockwise.
    pub fn vertices(&self) -> [Point2; 4] {
        let r = self.circumradius();
        let base = self.rotation.radians() + FRAC_PI_4;
        std::array::from_fn(|k| self.center + Point2::polar(r, base + k as f64 * FRAC_PI_2))
    }

    /// Recovers a square from four counterclockwise vertices. The shape is
    /// not validated; see `verify_inscribed` for shape errors.
    pub fn from_vertices(v: &[Point2; 4]) -> Result<Self> {
        let center = (v[0] + v[1] + v[2] + v[3]) / 4.0;
        let side = (0..4).map(|k| v[k].distance(v[(k + 1) % 4])).sum::<f64>() / 4.0;
        // average the four vertex directions after undoing the k·π/2 offsets
        let mut acc = Point2::ORIGIN;
        for (k, p) in v.iter().enumerate() {
            acc += (*p - center).rotate(-(k as f64) * FRAC_PI_2);
        }
        Square::new(center, side, acc.angle() - FRAC_PI_4)
    }

    pub fn translated(&self, t: Point2) -> Square {
        Square {
            center: self.center + t,
            ..*self
        }
    }

    /// Scaled by `factor > 0` about `about`.
    pub fn scaled_about(&self, about: Point2, factor: f64) -> Square {
        Square {
            center: about + (self.center - about) * factor,
            side: self.side * factor,
            rotation: self.rotation,
        }
    }

    /// Rotated counterclockwise by `radians` about the origin.
    pub fn rotated(&self, radians: f64) -> Square {
        Square {
            center: self.center.rotate(radians),
            side: self.side,
            rotation: Angle::from_radians(self.rotation.radians() + radians).quarter_turn(),
        }
    }
}

/// Shortest distance between two square rotations on the π/2-periodic circle.
pub fn rotation_distance(a: Angle, b: Angle) -> f64 {
    let d = Angle::from_radians(a.radians() - b.radians()).quarter_turn().radians();
    d.min(FRAC_PI_2 - d)
}
