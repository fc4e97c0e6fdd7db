//! Probes `f(y) > f(x) − ε` on shrinking circles around a few points.

use squarepeg::obtuseness::{default_probe_radii, lsc_probe, LscOutcome};
use squarepeg::{ConvexBody, Point2};

fn main() -> squarepeg::Result<()> {
    let body = ConvexBody::polygon(&[
        Point2::new(0.0, 0.0),
        Point2::new(3.0, 0.0),
        Point2::new(3.5, 1.0),
        Point2::new(1.0, 2.0),
    ])?;
    let radii = default_probe_radii(&body);
    let eps = 0.05 * body.diameter();
    let points = [
        Point2::new(0.0, 0.0),
        Point2::new(1.5, 0.0),
        Point2::new(1.5, 0.8),
        Point2::new(3.5, 1.0),
    ];
    for x in points {
        match lsc_probe(&body, x, eps, 1e-3, 64, &radii)? {
            LscOutcome::Holds { radius, f_at_point, neighborhood_min } => println!(
                "({:.2}, {:.2}): f = {f_at_point:.5}, min over radius {radius:.2e} is {neighborhood_min:.5}",
                x.x, x.y
            ),
            LscOutcome::Failure { f_at_point, neighborhood_min, .. } => println!(
                "({:.2}, {:.2}): f = {f_at_point:.5} but neighbors drop to {neighborhood_min:.5}",
                x.x, x.y
            ),
        }
    }
    Ok(())
}
