//! Seeded random bodies and independent oracles shared by the integration
//! tests. Nothing here calls the closed-form sector code.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use squarepeg::{ConvexBody, Point2, PointClass};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points on a randomly stretched circle at sorted random angles, hulled.
/// Every interior angle exceeds `π/2 + margin`.
pub fn random_obtuse_polygon(rng: &mut impl Rng, margin: f64) -> ConvexBody {
    loop {
        let n = rng.gen_range(6..=14);
        let (a, b) = (rng.gen_range(0.6..2.0), rng.gen_range(0.6..2.0));
        let tilt = rng.gen_range(0.0..TAU);
        let center = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point2> = angles
            .iter()
            .map(|&t| center + Point2::new(a * t.cos(), b * t.sin()).rotate(tilt))
            .collect();
        if let Ok(body) = ConvexBody::polygon(&pts) {
            if body.min_angle_vertex().1 > FRAC_PI_2 + margin {
                return body;
            }
        }
    }
}

/// Hull of random points in a box, kept only if some interior angle is at
/// most `π/2 − margin`.
pub fn random_non_obtuse_polygon(rng: &mut impl Rng, margin: f64) -> ConvexBody {
    loop {
        let n = rng.gen_range(3..=9);
        let scale = rng.gen_range(0.5..4.0);
        let pts: Vec<Point2> = (0..n)
            .map(|_| Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
            .collect();
        if let Ok(body) = ConvexBody::polygon(&pts) {
            if body.min_angle_vertex().1 <= FRAC_PI_2 - margin && body.area() > 1e-2 * scale * scale {
                return body;
            }
        }
    }
}

/// Any random convex polygon: one of the two families above.
pub fn random_convex_polygon(rng: &mut impl Rng) -> ConvexBody {
    if rng.gen_bool(0.5) {
        random_obtuse_polygon(rng, 0.0)
    } else {
        random_non_obtuse_polygon(rng, 0.0)
    }
}

/// Rounds to a multiple of `2^-20`, so sums and differences with other
/// such numbers of moderate size are exact.
pub fn dyadic(x: f64) -> f64 {
    (x * 1048576.0).round() / 1048576.0
}

pub fn dyadic_polygon(body: &ConvexBody) -> ConvexBody {
    let pts: Vec<Point2> = body.vertices().iter().map(|v| Point2::new(dyadic(v.x), dyadic(v.y))).collect();
    ConvexBody::polygon(&pts).expect("quantization keeps a nondegenerate hull")
}

/// Uniform point in the body by rejection from its bounding box.
pub fn random_interior_point(rng: &mut impl Rng, body: &ConvexBody) -> Point2 {
    let bb = body.bounding_box();
    loop {
        let p = Point2::new(rng.gen_range(bb.min.x..bb.max.x), rng.gen_range(bb.min.y..bb.max.y));
        if body.classify_point(p, body.default_tol()) == PointClass::Interior {
            return p;
        }
    }
}

/// Uniform point on the boundary by arc length.
pub fn random_boundary_point(rng: &mut impl Rng, body: &ConvexBody) -> Point2 {
    body.point_at_arclength(rng.gen_range(0.0..body.perimeter()))
}

/// Half-plane test straight from the vertex list: `p` is inside or within
/// `tol` of every edge line.
pub fn inside_by_cross(body: &ConvexBody, p: Point2, tol: f64) -> bool {
    let v = body.vertices();
    (0..v.len()).all(|i| {
        let (a, b) = (v[i], v[(i + 1) % v.len()]);
        let e = b - a;
        e.cross(p - a) / e.norm() >= -tol
    })
}

/// Sector containment by sampling: a sector of angle at most π is the convex
/// hull of its apex and arc, so it fits iff the apex and the arc do.
pub fn sector_fits_sampled(body: &ConvexBody, apex: Point2, u0: Point2, theta: f64, r: f64, arc_samples: usize) -> bool {
    let tol = body.default_tol();
    inside_by_cross(body, apex, tol)
        && (0..=arc_samples).all(|k| {
            let p = apex + u0.rotate(theta * k as f64 / arc_samples as f64) * r;
            inside_by_cross(body, p, tol)
        })
}

/// Largest sampled-fit radius along one orientation, by bisection.
pub fn sampled_radius(body: &ConvexBody, apex: Point2, u0: Point2, theta: f64, arc_samples: usize) -> f64 {
    let (mut lo, mut hi) = (0.0, 2.0 * body.diameter());
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if sector_fits_sampled(body, apex, u0, theta, mid, arc_samples) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Brute-force sector radius: orientation grid, then a local ternary
/// refinement of the best grid orientation.
pub fn brute_force_f_delta(body: &ConvexBody, x: Point2, delta: f64, orientations: usize, arc_samples: usize) -> f64 {
    let theta = FRAC_PI_2 + delta;
    let radius = |phi: f64| sampled_radius(body, x, Point2::from_angle(phi), theta, arc_samples);
    let mut best = (0.0, 0.0);
    for k in 0..orientations {
        let phi = TAU * k as f64 / orientations as f64;
        let r = radius(phi);
        if r > best.1 {
            best = (phi, r);
        }
    }
    let h = TAU / orientations as f64;
    let (mut a, mut b) = (best.0 - h, best.0 + h);
    for _ in 0..40 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if radius(m1) < radius(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    best.1.max(radius(0.5 * (a + b)))
}
