use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Angle, ConvexBody, Point2};
use crate::error::{Error, Result};

/// Normal-vs-arc support values at or below this are treated as "the arc
/// never moves outward across this edge line".
const ARC_SUPPORT_EPS: f64 = 1e-12;

/// `{apex + r·e^{iφ}·v : φ ∈ [0, θ], r ∈ [0, 1]}`: the region swept when the
/// segment from `apex` to `apex + v` turns counterclockwise through `theta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSector {
    pub apex: Point2,
    pub v: Point2,
    pub theta: Angle,
}

impl TruncatedSector {
    pub fn new(apex: Point2, v: Point2, theta: f64) -> Result<Self> {
        if !apex.is_finite() || !v.is_finite() || !theta.is_finite() {
            return Err(Error::NonFinite);
        }
        if v.norm() == 0.0 {
            return Err(Error::InvalidArgument("sector radius vector must be nonzero".into()));
        }
        if !(theta > 0.0 && theta <= PI) {
            return Err(Error::InvalidArgument(format!(
                "sector angle must lie in (0, π], got {theta}"
            )));
        }
        Ok(TruncatedSector {
            apex,
            v,
            theta: Angle::from_radians(theta),
        })
    }

    pub fn radius(&self) -> f64 {
        self.v.norm()
    }

    /// The two arc endpoints `apex + v` and `apex + e^{iθ}v`.
    pub fn arc_endpoints(&self) -> (Point2, Point2) {
        (self.apex + self.v, self.apex + self.v.rotate(self.theta.radians()))
    }

    /// Point of the sector at polar offset (`r`, `phi`) relative to `v`.
    pub fn point(&self, r: f64, phi: f64) -> Point2 {
        self.apex + self.v.rotate(phi) * r
    }
}

/// `max_{φ∈[0,θ]} n·(e^{iφ}u0)` for unit vectors, with `θ ≤ π`.
fn arc_support(n: Point2, u0: Point2, u1: Point2) -> f64 {
    if u0.cross(n) >= 0.0 && n.cross(u1) >= 0.0 {
        1.0
    } else {
        n.dot(u0).max(n.dot(u1))
    }
}

/// Edge constraints seen from a fixed apex, sorted by slack so that repeated
/// radius queries over many orientations can stop early.
#[derive(Clone, Debug)]
pub struct ApexConstraints {
    /// `(slack, outward normal)`, ascending slack.
    edges: Vec<(f64, Point2)>,
    outside: bool,
    eps: f64,
}

impl ApexConstraints {
    pub fn new(body: &ConvexBody, apex: Point2) -> Self {
        let eps = body.default_tol();
        let mut edges: Vec<(f64, Point2)> = body
            .normals()
            .iter()
            .zip(body.vertices())
            .map(|(&n, &v)| (n.dot(v - apex), n))
            .collect();
        edges.sort_by(|a, b| a.0.total_cmp(&b.0));
        let outside = edges[0].0 < -eps;
        ApexConstraints { edges, outside, eps }
    }

    /// Largest radius of a sector starting in unit direction `u0` and
    /// sweeping `theta` counterclockwise that fits in the body.
    pub fn max_radius(&self, u0: Point2, theta: f64) -> f64 {
        if self.outside {
            return 0.0;
        }
        let u1 = u0.rotate(theta);
        let mut best = f64::INFINITY;
        for &(slack, n) in &self.edges {
            // slack / m >= slack for m <= 1, so later edges cannot bind
            if slack >= best {
                break;
            }
            let m = arc_support(n, u0, u1);
            if m <= ARC_SUPPORT_EPS {
                continue;
            }
            if slack <= self.eps {
                return 0.0;
            }
            best = best.min(slack / m);
        }
        best
    }
}

/// Largest radius `R` such that the sector at `apex` starting in unit
/// direction `u0` and sweeping `theta` counterclockwise, with radius `R`, lies
/// in `body`. Zero if the apex sits on an edge the arc would cross, or if the
/// apex is outside. "On an edge" and "outside" use the body's default
/// boundary tolerance, matching [`ConvexBody::classify_point`].
///
/// For each edge half-plane the sector's extreme point in the outward normal
/// direction is either the apex, an arc endpoint, or (when the normal falls
/// inside the arc's angular span) the arc point facing the normal.
pub fn max_sector_radius(body: &ConvexBody, apex: Point2, u0: Point2, theta: f64) -> f64 {
    ApexConstraints::new(body, apex).max_radius(u0, theta)
}

/// Whether the whole sector lies inside `body`. Exact for polygons up to the
/// boundary tolerance used by [`max_sector_radius`]; no sampling.
pub fn sector_contains(body: &ConvexBody, sec: &TruncatedSector) -> bool {
    let r = sec.radius();
    let limit = max_sector_radius(body, sec.apex, sec.v / r, sec.theta.radians());
    r <= limit * (1.0 + 1e-12)
}
