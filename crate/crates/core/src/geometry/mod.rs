//! Planar primitives: points, angles, convex bodies, squares and truncated
//! sectors.

mod angle;
mod body;
mod point;
mod sector;
mod square;

pub use angle::{ccw_angle_between, Angle};
pub use body::{regular_interior_angle, segment_distance, segment_projection, BoundingBox, ConvexBody, PointClass, Provenance};
pub use point::Point2;
pub use sector::{max_sector_radius, ApexConstraints, sector_contains, TruncatedSector};
pub use square::{rotation_distance, Square};

/// Classifies `p` against `body` with tolerance `tol`.
pub fn classify_point(body: &ConvexBody, p: Point2, tol: f64) -> PointClass {
    body.classify_point(p, tol)
}

pub fn square_vertices(sq: &Square) -> [Point2; 4] {
    sq.vertices()
}

pub fn radial_scale(body: &ConvexBody, u: Point2) -> crate::Result<f64> {
    body.radial_scale(u)
}

pub fn diameter(body: &ConvexBody) -> f64 {
    body.diameter()
}
