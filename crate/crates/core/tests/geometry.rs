mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;
use squarepeg::geometry::{max_sector_radius, radial_scale, rotation_distance, sector_contains};
use squarepeg::{Angle, ConvexBody, Point2, PointClass, Square, TruncatedSector};

fn point() -> impl Strategy<Value = Point2> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

#[test]
fn regular_polygon_measures() {
    for n in 3..=12 {
        let body = ConvexBody::regular_ngon(n, 1.0).unwrap();
        let nf = n as f64;
        assert!((body.area() - 0.5 * nf * (TAU / nf).sin()).abs() < 1e-12);
        assert!((body.perimeter() - 2.0 * nf * (PI / nf).sin()).abs() < 1e-12);
        let expected_angle = PI - TAU / nf;
        for a in body.interior_angles() {
            assert!((a - expected_angle).abs() < 1e-12);
        }
        let diam = if n % 2 == 0 { 2.0 } else { 2.0 * (PI / nf * (nf - 1.0) / 2.0).sin() };
        assert!((body.diameter() - diam).abs() < 1e-12, "n = {n}");
        assert!(body.centroid().norm() < 1e-14);
    }
}

#[test]
fn sampled_disk_is_close_to_circle() {
    let disk = ConvexBody::disk(1.0, 512).unwrap();
    let floor = 1.0 - (PI / 512.0).cos();
    for k in 0..100 {
        let u = Point2::from_angle(k as f64 * 0.0631);
        let r = radial_scale(&disk, u).unwrap();
        assert!(r <= 1.0 + 1e-15 && r >= 1.0 - floor - 1e-15);
    }
    assert!((disk.area() - PI).abs() < 1e-4);
}

#[test]
fn classification_matches_cross_products() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        let body = common::random_convex_polygon(&mut rng);
        let bb = body.bounding_box();
        for _ in 0..200 {
            use rand::Rng;
            let p = Point2::new(
                rng.gen_range(bb.min.x - 0.5..bb.max.x + 0.5),
                rng.gen_range(bb.min.y - 0.5..bb.max.y + 0.5),
            );
            let inside = common::inside_by_cross(&body, p, 0.0);
            let class = body.classify_point(p, 0.0);
            assert_eq!(inside, class != PointClass::Exterior, "{p:?}");
        }
    }
}

#[test]
fn sector_radius_matches_sampled_oracle() {
    let mut rng = common::rng(12);
    use rand::Rng;
    for _ in 0..40 {
        let body = common::random_convex_polygon(&mut rng);
        let x = common::random_interior_point(&mut rng, &body);
        let u0 = Point2::from_angle(rng.gen_range(0.0..TAU));
        let theta = rng.gen_range(0.1..PI);
        let exact = max_sector_radius(&body, x, u0, theta);
        let sampled = common::sampled_radius(&body, x, u0, theta, 4096);
        let diam = body.diameter();
        // sampling the arc can only overestimate
        assert!(sampled >= exact - 1e-9 * diam, "{sampled} < {exact}");
        assert!(sampled - exact <= 1e-6 * diam, "{sampled} vs {exact}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn square_round_trips_through_vertices(c in point(), side in 1e-3..100.0f64, rot in -10.0..10.0f64) {
        let sq = Square::new(c, side, rot).unwrap();
        let back = Square::from_vertices(&sq.vertices()).unwrap();
        let scale = 1.0 + c.norm() + side;
        prop_assert!(back.center.distance(sq.center) <= 1e-12 * scale);
        prop_assert!((back.side - sq.side).abs() <= 1e-12 * scale);
        prop_assert!(rotation_distance(back.rotation, sq.rotation) <= 1e-12 * scale / side);
    }

    #[test]
    fn square_is_a_square(c in point(), side in 1e-3..100.0f64, rot in -10.0..10.0f64) {
        let v = Square::new(c, side, rot).unwrap().vertices();
        for k in 0..4 {
            let e = v[(k + 1) % 4] - v[k];
            let f = v[(k + 2) % 4] - v[(k + 1) % 4];
            prop_assert!((e.norm() - side).abs() <= 1e-12 * (side + c.norm()));
            // consecutive edges turn left by a right angle
            prop_assert!((e.rotate(FRAC_PI_2) - f).norm() <= 1e-12 * (side + c.norm()));
        }
    }

    #[test]
    fn rotation_is_quarter_turn_periodic(c in point(), side in 0.1..10.0f64, rot in -10.0..10.0f64) {
        let a = Square::new(c, side, rot).unwrap();
        let b = Square::new(c, side, rot + FRAC_PI_2).unwrap();
        prop_assert!(rotation_distance(a.rotation, b.rotation) < 1e-9);
        prop_assert!(a.rotation.radians() >= 0.0 && a.rotation.radians() < FRAC_PI_2);
    }

    #[test]
    fn radial_scale_depends_only_on_direction(seed in 0u64..10_000, t in 0.0..TAU, k in 0.01..100.0f64) {
        let body = common::random_obtuse_polygon(&mut common::rng(seed), 0.0).centered();
        let u = Point2::from_angle(t);
        let r = radial_scale(&body, u).unwrap();
        let rk = radial_scale(&body, u * k).unwrap();
        prop_assert!((rk - r).abs() <= 1e-12 * r);
        // the scaled point lies on the boundary
        prop_assert!(body.distance_to_boundary(u * r) <= 1e-12 * body.diameter());
    }

    #[test]
    fn radial_scale_scales_with_body(seed in 0u64..10_000, t in 0.0..TAU, k in 0.01..100.0f64) {
        let body = common::random_obtuse_polygon(&mut common::rng(seed), 0.0).centered();
        let u = Point2::from_angle(t);
        let r = radial_scale(&body, u).unwrap();
        let rk = radial_scale(&body.scaled(k), u).unwrap();
        prop_assert!((rk - k * r).abs() <= 1e-12 * k * r);
    }

    #[test]
    fn sector_containment_is_monotone(
        seed in 0u64..10_000,
        t in 0.0..TAU,
        theta in 0.05..PI,
        frac in 0.05..1.5f64,
        shrink_r in 0.0..1.0f64,
        shrink_t in 0.0..1.0f64,
    ) {
        let mut rng = common::rng(seed);
        let body = common::random_convex_polygon(&mut rng);
        let apex = common::random_interior_point(&mut rng, &body);
        let v = Point2::from_angle(t) * frac * body.distance_to_boundary(apex).max(1e-6) * 2.0;
        let big = TruncatedSector::new(apex, v, theta).unwrap();
        let small = TruncatedSector::new(apex, v * (1.0 - shrink_r).max(1e-3), theta * (1.0 - shrink_t).max(1e-3)).unwrap();
        if sector_contains(&body, &big) {
            prop_assert!(sector_contains(&body, &small));
        }
    }

    #[test]
    fn hull_is_convex_and_ccw(seed in 0u64..10_000) {
        let body = common::random_convex_polygon(&mut common::rng(seed));
        let v = body.vertices();
        for i in 0..v.len() {
            let (a, b, c) = (v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]);
            prop_assert!((b - a).cross(c - b) > 0.0);
        }
        let total: f64 = body.interior_angles().iter().sum();
        prop_assert!((total - PI * (v.len() as f64 - 2.0)).abs() < 1e-9);
    }

    #[test]
    fn body_serde_round_trip(seed in 0u64..10_000) {
        let body = common::random_convex_polygon(&mut common::rng(seed));
        let json = serde_json::to_string(&body).unwrap();
        let back: ConvexBody = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, body);
    }
}

#[test]
fn angle_normalization() {
    assert_eq!(Angle::from_radians(-FRAC_PI_2).normalized().radians(), 1.5 * PI);
    assert!(Angle::from_radians(TAU).normalized().radians().abs() < 1e-15);
}
