use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use super::Point2;

/// An angle in radians. Serialized as a bare number.
///
/// Construction does not normalize; callers pick the range they need via
/// [`Angle::normalized`] (`[0, 2π)`) or [`Angle::quarter_turn`] (`[0, π/2)`).
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);
    pub const RIGHT: Angle = Angle(FRAC_PI_2);

    pub const fn from_radians(radians: f64) -> Self {
        Angle(radians)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Representative in `[0, 2π)`.
    pub fn normalized(self) -> Angle {
        Angle(wrap(self.0, TAU))
    }

    /// Representative in `[0, π/2)`, the symmetry period of a square.
    pub fn quarter_turn(self) -> Angle {
        Angle(wrap(self.0, FRAC_PI_2))
    }

    pub fn unit_vector(self) -> Point2 {
        Point2::from_angle(self.0)
    }
}

fn wrap(value: f64, period: f64) -> f64 {
    let r = value.rem_euclid(period);
    // rem_euclid can round up to exactly `period` for tiny negative inputs
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Counterclockwise angular distance from `from` to `to`, in `[0, 2π)`.
pub fn ccw_angle_between(from: f64, to: f64) -> f64 {
    wrap(to - from, TAU)
}
