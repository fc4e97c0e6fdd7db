//! Trivial squares: squares of side `≤ s` centered in the body whose four
//! vertices all avoid the body's interior.
//!
//! At a boundary point whose tangent cone is at most a right angle, the
//! square whose first vertex points along the cone's first edge is always
//! trivial, for every side length. [`direction_arc`] computes that cone (the
//! set of directions in which rays from the point meet the body) and
//! [`trivial_square_at`] builds the square.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ccw_angle_between, Angle, ConvexBody, Point2, PointClass, Square};

/// Slack on the right-angle test in [`trivial_square_at`].
pub const ARC_WIDTH_TOL: f64 = 1e-9;

/// Whether the arc's base point is a vertex or lies inside an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum ArcSite {
    Vertex { index: usize },
    Edge { index: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCrossCheck {
    pub samples: usize,
    /// Sampled directions with a ray hit that fall outside `[phi, psi]`.
    pub hits_outside_arc: usize,
    /// Sampled directions inside `(phi, psi)` without a ray hit.
    pub misses_inside_arc: usize,
}

/// The arc `{e^{it} : t ∈ [phi, psi]}` of directions in which rays from
/// `base_point` meet the body in a segment of positive length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionArc {
    pub base_point: Point2,
    /// In `[0, 2π)`.
    pub phi: Angle,
    /// `phi + width`; may exceed `2π`.
    pub psi: Angle,
    pub site: ArcSite,
    pub cross_check: ArcCrossCheck,
}

impl DirectionArc {
    pub fn width(&self) -> f64 {
        self.psi.radians() - self.phi.radians()
    }

    /// Whether direction `angle` lies in the closed arc (modulo `2π`).
    pub fn contains(&self, angle: f64) -> bool {
        ccw_angle_between(self.phi.radians(), angle) <= self.width()
    }
}

/// The direction arc at a boundary point, computed exactly from the tangent
/// cone, plus a sampled cross-check with `angular_resolution` ray casts.
pub fn direction_arc(body: &ConvexBody, x: Point2, angular_resolution: usize) -> Result<DirectionArc> {
    let tol = body.default_tol();
    if body.classify_point(x, tol) != PointClass::Boundary {
        return Err(Error::NotBoundaryPoint { x: x.x, y: x.y });
    }
    let n = body.len();
    let nearest_vertex = (0..n)
        .map(|i| (i, body.vertex(i).distance(x)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("bodies have vertices");
    let (phi, width, site) = if nearest_vertex.1 <= tol {
        let i = nearest_vertex.0;
        let out = body.vertex(i + 1) - body.vertex(i);
        (out.angle(), body.interior_angle(i), ArcSite::Vertex { index: i })
    } else {
        let i = (0..n)
            .map(|i| {
                let (a, b) = body.edge(i);
                (i, crate::geometry::segment_distance(x, a, b))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("bodies have edges")
            .0;
        let (a, b) = body.edge(i);
        ((b - a).angle(), PI, ArcSite::Edge { index: i })
    };
    let phi = Angle::from_radians(phi).normalized();
    let mut arc = DirectionArc {
        base_point: x,
        phi,
        psi: Angle::from_radians(phi.radians() + width),
        site,
        cross_check: ArcCrossCheck::default(),
    };
    arc.cross_check = cross_check(body, &arc, angular_resolution);
    Ok(arc)
}

fn cross_check(body: &ConvexBody, arc: &DirectionArc, samples: usize) -> ArcCrossCheck {
    let min_len = 1e-6 * body.diameter();
    // stay clear of the arc's endpoints, where hit/miss is decided by roundoff
    let margin = 1e-6;
    let mut check = ArcCrossCheck {
        samples,
        ..ArcCrossCheck::default()
    };
    for k in 0..samples {
        let angle = TAU * (k as f64 + 0.5) / samples as f64;
        let offset = ccw_angle_between(arc.phi.radians(), angle);
        if offset < margin || (offset - arc.width()).abs() < margin || TAU - offset < margin {
            continue;
        }
        let hit = body
            .ray_clip(arc.base_point, Point2::from_angle(angle))
            .is_some_and(|(t0, t1)| t1 - t0 > min_len);
        let inside = offset < arc.width();
        if hit && !inside {
            check.hits_outside_arc += 1;
        }
        if inside && !hit {
            check.misses_inside_arc += 1;
        }
    }
    check
}

/// The square centered at `x` with vertices `x + (s/√2)·e^{i(φ + kπ/2)}`.
///
/// Requires the direction arc at `x` to be at most a right angle; then every
/// vertex lies outside the body's interior for every `s > 0`.
pub fn trivial_square_at(body: &ConvexBody, x: Point2, s: f64) -> Result<Square> {
    if !(s > 0.0) {
        return Err(Error::InvalidSide(s));
    }
    let arc = direction_arc(body, x, 64)?;
    if arc.width() > FRAC_PI_2 + ARC_WIDTH_TOL {
        return Err(Error::ArcTooWide { width: arc.width() });
    }
    Square::from_first_vertex_angle(x, s, arc.phi.radians())
}

/// Detailed outcome of [`verify_trivial_square`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialityCheck {
    pub side_ok: bool,
    pub center: PointClass,
    pub vertices: [PointClass; 4],
    pub passes: bool,
}

pub fn check_trivial_square(body: &ConvexBody, sq: &Square, s: f64, tol: f64) -> TrivialityCheck {
    let side_ok = s > 0.0 && sq.side > 0.0 && sq.side <= s * (1.0 + 1e-12);
    let center = body.classify_point(sq.center, tol);
    let verts = sq.vertices();
    let vertices = std::array::from_fn(|k| body.classify_point(verts[k], tol));
    let passes = side_ok
        && center != PointClass::Exterior
        && vertices.iter().all(|&c| c != PointClass::Interior);
    TrivialityCheck {
        side_ok,
        center,
        vertices,
        passes,
    }
}

/// True iff `sq.side ∈ (0, s]`, the center is in the body, and no vertex is
/// interior (all with boundary tolerance `tol`).
pub fn verify_trivial_square(body: &ConvexBody, sq: &Square, s: f64, tol: f64) -> bool {
    let side_ok = s > 0.0 && sq.side > 0.0 && sq.side <= s * (1.0 + 1e-12);
    side_ok
        && body.classify_point(sq.center, tol) != PointClass::Exterior
        && sq
            .vertices()
            .iter()
            .all(|&v| body.classify_point(v, tol) != PointClass::Interior)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialSearchConfig {
    pub boundary_samples: usize,
    /// Inward offsets of each boundary sample, as fractions of the diameter.
    pub inward_offsets: [f64; 2],
    pub interior_grid: usize,
    pub rotations: usize,
    /// Side ladder `s·2^{-j}`, `j = 0..side_steps`.
    pub side_steps: usize,
}

impl Default for TrivialSearchConfig {
    fn default() -> Self {
        TrivialSearchConfig {
            boundary_samples: 128,
            inward_offsets: [1e-4, 1e-2],
            interior_grid: 16,
            rotations: 16,
            side_steps: 16,
        }
    }
}

/// Outcome of a trivial-square search. A negative verdict only means no
/// witness exists on the search grid recorded in `grid`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialityVerdict {
    pub s: f64,
    pub trivial: bool,
    pub witness: Option<Square>,
    pub grid: TrivialSearchConfig,
    pub centers_scanned: usize,
}

/// Candidate centers in scan order: centroid, vertices, boundary samples,
/// inward offsets of the samples, then interior lattice points.
pub fn search_centers(body: &ConvexBody, cfg: &TrivialSearchConfig) -> Vec<Point2> {
    let tol = body.default_tol();
    let mut centers = vec![body.centroid()];
    centers.extend_from_slice(body.vertices());
    let samples = body.boundary_samples(cfg.boundary_samples);
    centers.extend_from_slice(&samples);
    for &frac in &cfg.inward_offsets {
        let depth = frac * body.diameter();
        for &p in &samples {
            let q = p + (body.centroid() - p).normalized() * depth;
            if body.classify_point(q, tol) != PointClass::Exterior {
                centers.push(q);
            }
        }
    }
    let bbox = body.bounding_box();
    let g = cfg.interior_grid;
    for j in 0..g {
        for i in 0..g {
            let p = Point2::new(
                bbox.min.x + bbox.width() * (i as f64 + 0.5) / g as f64,
                bbox.min.y + bbox.height() * (j as f64 + 0.5) / g as f64,
            );
            if body.classify_point(p, tol) != PointClass::Exterior {
                centers.push(p);
            }
        }
    }
    centers
}

/// Searches centers × rotations × side ladder for a trivial square of side
/// at most `s`; returns the first verified witness in scan order.
pub fn find_trivial_square(body: &ConvexBody, s: f64, cfg: &TrivialSearchConfig) -> Result<TrivialityVerdict> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidSide(s));
    }
    let tol = body.default_tol();
    let centers = search_centers(body, cfg);
    let rotations: Vec<f64> = (0..cfg.rotations)
        .map(|k| FRAC_PI_2 * k as f64 / cfg.rotations as f64)
        .collect();
    let sides: Vec<f64> = (0..cfg.side_steps).map(|j| s * 0.5f64.powi(j as i32)).collect();

    let witness = centers.par_iter().find_map_first(|&c| {
        if body.classify_point(c, tol) == PointClass::Exterior {
            return None;
        }
        for &rot in &rotations {
            for &t in &sides {
                let sq = Square::new(c, t, rot).ok()?;
                if verify_trivial_square(body, &sq, s, tol) {
                    return Some(sq);
                }
            }
        }
        None
    });
    Ok(TrivialityVerdict {
        s,
        trivial: witness.is_some(),
        witness,
        grid: *cfg,
        centers_scanned: centers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn unit_square() -> ConvexBody {
        ConvexBody::polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn arc_widths() {
        let sq = unit_square();
        let corner = direction_arc(&sq, Point2::ORIGIN, 360).unwrap();
        assert!((corner.width() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(corner.phi.radians(), 0.0);
        assert_eq!(corner.site, ArcSite::Vertex { index: 0 });
        let edge = direction_arc(&sq, Point2::new(0.5, 0.0), 360).unwrap();
        assert!((edge.width() - PI).abs() < 1e-15);
        assert_eq!(edge.cross_check.hits_outside_arc, 0);
        assert_eq!(edge.cross_check.misses_inside_arc, 0);
        let tri = ConvexBody::regular_ngon(3, 1.0).unwrap();
        let v = direction_arc(&tri, tri.vertex(1), 360).unwrap();
        assert!((v.width() - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn arc_requires_boundary_point() {
        assert!(matches!(
            direction_arc(&unit_square(), Point2::new(0.5, 0.5), 64),
            Err(Error::NotBoundaryPoint { .. })
        ));
    }

    #[test]
    fn corner_witness_vertices() {
        let sq = unit_square();
        let w = trivial_square_at(&sq, Point2::ORIGIN, 1.0).unwrap();
        let v = w.vertices();
        let h = FRAC_1_SQRT_2;
        let expect = [(h, 0.0), (0.0, h), (-h, 0.0), (0.0, -h)];
        // same vertex set; labels shift with the canonical rotation
        for (x, y) in expect {
            assert!(v.iter().any(|p| (p.x - x).abs() < 1e-15 && (p.y - y).abs() < 1e-15));
        }
        let check = check_trivial_square(&sq, &w, 1.0, sq.default_tol());
        assert!(check.passes);
        let boundary = check.vertices.iter().filter(|&&c| c == PointClass::Boundary).count();
        assert_eq!(boundary, 2);
    }

    #[test]
    fn edge_point_arc_is_too_wide() {
        assert!(matches!(
            trivial_square_at(&unit_square(), Point2::new(0.5, 0.0), 1.0),
            Err(Error::ArcTooWide { .. })
        ));
        assert!(matches!(
            trivial_square_at(&unit_square(), Point2::ORIGIN, 0.0),
            Err(Error::InvalidSide(_))
        ));
    }

    #[test]
    fn verify_examples() {
        let sq = unit_square();
        let tol = sq.default_tol();
        let diamond = Square::new(Point2::ORIGIN, 0.1, PI / 4.0).unwrap();
        assert!(verify_trivial_square(&sq, &diamond, 0.1, tol));
        assert!(!verify_trivial_square(&sq, &diamond, 0.05, tol));
        let disk = ConvexBody::disk(1.0, 512).unwrap();
        let small = Square::new(Point2::ORIGIN, 0.1, 0.0).unwrap();
        assert!(!verify_trivial_square(&disk, &small, 0.1, disk.default_tol()));
        let big = Square::new(Point2::ORIGIN, 3.0, 0.0).unwrap();
        assert!(verify_trivial_square(&disk, &big, 3.0, disk.default_tol()));
    }

    #[test]
    fn search_finds_corner_witness() {
        let sq = unit_square();
        let v = find_trivial_square(&sq, 0.5, &TrivialSearchConfig::default()).unwrap();
        let w = v.witness.unwrap();
        assert!(w.center.distance(Point2::ORIGIN) < 1e-12, "{w:?}");
        assert!(find_trivial_square(&sq, -1.0, &TrivialSearchConfig::default()).is_err());
    }
}
