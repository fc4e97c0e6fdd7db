//! Obtuse convex bodies, trivial and nontrivial solutions of the Table
//! Theorem, and inscribed squares in convex curves.
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`]: points, convex polygons, squares, truncated sectors.
//! - [`obtuseness`]: the sector-radius function, obtuseness, `s*`.
//! - [`triviality`]: trivial squares and the direction-arc construction.
//! - [`table`]: height fields, the radial tabletop, the level-square solver.
//! - [`peg`]: the tabletop pipeline to an inscribed square, and a
//!   brute-force inscribed-square oracle.
//! - [`cli`]: shape specs, JSON run reports, SVG figures.

// `!(x > 0.0)` is used on purpose to reject NaN alongside bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod obtuseness;
pub mod optim;
pub mod peg;
pub mod table;
pub mod triviality;

pub use error::{Error, Result};
pub use geometry::{Angle, ConvexBody, Point2, PointClass, Square, TruncatedSector};
