mod common;

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use squarepeg::geometry::segment_distance;
use squarepeg::peg::{
    inscribe_via_table, oracle_inscribed_squares, square_set_distance, verify_inscribed, OracleConfig,
    PipelineConfig,
};
use squarepeg::{ConvexBody, Error, Point2, Square};

/// Distance to the boundary as a plain minimum over edges.
fn boundary_gap(body: &ConvexBody, p: Point2) -> f64 {
    let v = body.vertices();
    (0..v.len())
        .map(|i| segment_distance(p, v[i], v[(i + 1) % v.len()]))
        .fold(f64::INFINITY, f64::min)
}

fn max_gap(body: &ConvexBody, sq: &Square) -> f64 {
    sq.vertices().iter().map(|&p| boundary_gap(body, p)).fold(0.0, f64::max)
}

#[test]
fn pipeline_squares_are_inscribed() {
    let mut rng = common::rng(51);
    for _ in 0..5 {
        let body = common::random_obtuse_polygon(&mut rng, 0.05);
        let r = inscribe_via_table(&body, &PipelineConfig::default()).unwrap();
        let t = r.trace.unwrap();
        assert!(t.y > 0.0 && t.y < 1.0);
        assert!((r.square.side - t.d_used / (1.0 - t.y)).abs() <= 1e-12 * r.square.side);
        assert!(max_gap(&body, &r.square) <= 1e-6 * body.diameter());
        assert!(verify_inscribed(&body, &r.square, 1e-6 * body.diameter()).pass);
        assert!(t.d_used < t.s_star_used);
    }
}

#[test]
fn ellipse_square_is_axis_aligned() {
    let ellipse = ConvexBody::ellipse(2.0, 1.0, 512).unwrap();
    let r = inscribe_via_table(&ellipse, &PipelineConfig::default()).unwrap();
    // vertices (±t, ±t) with t²/4 + t² = 1
    assert!((r.square.side - 4.0 / 5f64.sqrt()).abs() < 1e-2);
    assert!(r.square.center.norm() < 1e-6);
    assert!(r.max_boundary_distance < 1e-9);
}

#[test]
fn pipeline_follows_rigid_motions() {
    let base = ConvexBody::regular_ngon(7, 1.0).unwrap();
    let a = inscribe_via_table(&base, &PipelineConfig::default()).unwrap().square;
    let t = Point2::new(5.25, -3.5);
    let b = inscribe_via_table(&base.translated(t), &PipelineConfig::default()).unwrap().square;
    assert!(square_set_distance(&a.translated(t), &b) < 1e-6);
    let k = 3.0;
    let c = inscribe_via_table(&base.scaled(k), &PipelineConfig::default()).unwrap().square;
    assert!((c.side - k * a.side).abs() < 1e-6);
}

#[test]
fn non_obtuse_bodies_are_refused() {
    let mut rng = common::rng(52);
    for _ in 0..5 {
        let body = common::random_non_obtuse_polygon(&mut rng, 0.05);
        assert!(matches!(
            inscribe_via_table(&body, &PipelineConfig::default()),
            Err(Error::NotObtuse { .. })
        ));
    }
}

#[test]
fn oracle_finds_the_rotated_family_in_a_square() {
    let body = ConvexBody::polygon(&[
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(0.0, 1.0),
    ])
    .unwrap();
    let found = oracle_inscribed_squares(&body, &OracleConfig { n_boundary: 128, eps: 1e-7 }).unwrap();
    assert!(found.len() > 5);
    assert!((found[0].side - 1.0).abs() < 1e-7);
    for sq in &found {
        // squares with one vertex per side are centered and no smaller than 1/√2
        assert!(sq.center.distance(Point2::new(0.5, 0.5)) < 1e-6, "{sq:?}");
        assert!(sq.side >= FRAC_1_SQRT_2 - 1e-7 && sq.side <= 1.0 + 1e-7);
        assert!(max_gap(&body, sq) <= 1e-7);
    }
}

#[test]
fn oracle_and_pipeline_agree() {
    for body in [
        ConvexBody::regular_ngon(5, 1.0).unwrap(),
        ConvexBody::regular_ngon(7, 1.0).unwrap(),
        ConvexBody::ellipse(2.0, 1.0, 512).unwrap(),
    ] {
        let p = inscribe_via_table(&body, &PipelineConfig::default()).unwrap().square;
        let found = oracle_inscribed_squares(&body, &OracleConfig::default()).unwrap();
        let gap = found.iter().map(|o| square_set_distance(o, &p)).fold(f64::INFINITY, f64::min);
        assert!(gap <= 1e-3 * body.diameter(), "{gap}");
        for o in &found {
            assert!(max_gap(&body, o) <= 1e-6);
        }
    }
}

#[test]
fn disk_squares_have_side_sqrt2() {
    let disk = ConvexBody::disk(1.0, 256).unwrap();
    for sq in oracle_inscribed_squares(&disk, &OracleConfig::default()).unwrap() {
        assert!((sq.side - SQRT_2).abs() < 1e-3);
    }
}

#[test]
fn verification_catches_bad_squares() {
    let disk = ConvexBody::disk(1.0, 512).unwrap();
    let good = Square::new(Point2::ORIGIN, SQRT_2, 0.0).unwrap();
    assert!(verify_inscribed(&disk, &good, 1e-9).pass);
    let small = Square::new(Point2::ORIGIN, 1.3, 0.0).unwrap();
    let c = verify_inscribed(&disk, &small, 1e-6);
    assert!(!c.pass && c.max_boundary_distance > 0.05);
    let shifted = good.translated(Point2::new(1e-3, 0.0));
    assert!(!verify_inscribed(&disk, &shifted, 1e-6).pass);
}

#[test]
fn oracle_rejects_bad_configs() {
    let body = ConvexBody::regular_ngon(5, 1.0).unwrap();
    assert!(oracle_inscribed_squares(&body, &OracleConfig { n_boundary: 8, eps: 1e-6 }).is_err());
    assert!(oracle_inscribed_squares(&body, &OracleConfig { n_boundary: 64, eps: 0.0 }).is_err());
}
