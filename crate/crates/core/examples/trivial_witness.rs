//! Trivial squares at sharp corners: the square sits on the corner with its
//! other three vertices outside, so its center is in the body while no
//! vertex is interior.

use squarepeg::triviality::{check_trivial_square, direction_arc, find_trivial_square, trivial_square_at, TrivialSearchConfig};
use squarepeg::{ConvexBody, Error};

fn main() -> squarepeg::Result<()> {
    let triangle = ConvexBody::regular_ngon(3, 1.0)?;
    let (i, angle) = triangle.min_angle_vertex();
    let x = triangle.vertex(i);
    let arc = direction_arc(&triangle, x, 720)?;
    println!("triangle corner {i}: interior angle {:.1}°, arc width {:.1}°", angle.to_degrees(), arc.width().to_degrees());
    for s in [0.05, 1.0, 5.0] {
        let sq = trivial_square_at(&triangle, x, s)?;
        let check = check_trivial_square(&triangle, &sq, s, triangle.default_tol());
        println!("  side {s:>4}: center {:?}, vertices {:?}, ok = {}", check.center, check.vertices, check.passes);
    }

    let pentagon = ConvexBody::regular_ngon(5, 1.0)?;
    match trivial_square_at(&pentagon, pentagon.vertex(0), 1.0) {
        Err(Error::ArcTooWide { width }) => println!("pentagon corner: arc {:.1}° is wider than 90°", width.to_degrees()),
        other => println!("pentagon corner: unexpected {other:?}"),
    }
    let verdict = find_trivial_square(&pentagon, 0.5, &TrivialSearchConfig::default())?;
    println!("pentagon, side 0.5: trivial = {} after {} centers", verdict.trivial, verdict.centers_scanned);
    Ok(())
}
