use thiserror::Error;

/// Errors produced by the geometry, obtuseness, triviality, table and
/// inscription routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("convex hull has {0} vertices; at least 3 are required")]
    DegenerateBody(usize),
    #[error("origin is not strictly inside the body")]
    OriginNotInterior,
    #[error("point ({x}, {y}) lies outside the body")]
    PointOutsideBody { x: f64, y: f64 },
    #[error("point ({x}, {y}) is not on the boundary of the body")]
    NotBoundaryPoint { x: f64, y: f64 },
    #[error("side length must be positive, got {0}")]
    InvalidSide(f64),
    #[error("direction arc width {width} exceeds a right angle; the point admits an obtuse sector")]
    ArcTooWide { width: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no level square found after {starts} starts (best residual {best_residual:e})")]
    NoSolutionFound { starts: usize, best_residual: f64 },
    #[error("grid height {value} at index {index} is negative")]
    NegativeHeight { index: usize, value: f64 },
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("body is not obtuse (minimum interior angle {min_angle} rad)")]
    NotObtuse { min_angle: f64 },
    #[error("table solver failed: {0}")]
    SolverFailed(String),
    #[error("common height {y} is outside the open interval (0, 1)")]
    DegenerateY { y: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
