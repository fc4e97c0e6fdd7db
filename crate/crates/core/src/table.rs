//! Height fields on convex bodies and a numerical level-square solver.
//!
//! A height field is a nonnegative function that vanishes outside its body.
//! A level square of side `s` is a square with center in the body whose four
//! vertices have equal height; the Table Theorem guarantees one exists for
//! every continuous field and every `s > 0`. [`solve_table`] finds one by
//! multi-start Nelder-Mead on the spread of the four heights.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point2, PointClass, Square};
use crate::optim::{nelder_mead, NelderMeadOptions};

/// Distance from an interior origin to the boundary, by direction, answered
/// in `O(log n)` from the vertices' polar angles.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    origin: Point2,
    /// `(polar angle in [0, 2π), vertex index)`, ascending.
    angles: Vec<(f64, usize)>,
    body: ConvexBody,
}

impl RadialProfile {
    pub fn new(body: &ConvexBody, origin: Point2) -> Result<Self> {
        if body.classify_point(origin, body.default_tol()) != PointClass::Interior {
            return Err(Error::OriginNotInterior);
        }
        let mut angles: Vec<(f64, usize)> = body
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, &v)| ((v - origin).angle().rem_euclid(TAU), i))
            .collect();
        angles.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(RadialProfile {
            origin,
            angles,
            body: body.clone(),
        })
    }

    pub fn origin(&self) -> Point2 {
        self.origin
    }

    /// `ρ` along direction `dir` (any nonzero vector).
    pub fn rho(&self, dir: Point2) -> f64 {
        let theta = dir.angle().rem_euclid(TAU);
        // last vertex whose polar angle is <= theta, wrapping to the last one
        let k = self.angles.partition_point(|&(a, _)| a <= theta);
        let i = if k == 0 { self.angles[self.angles.len() - 1].1 } else { self.angles[k - 1].1 };
        let n = self.body.normal(i);
        let slack = n.dot(self.body.vertex(i) - self.origin);
        let u = dir.normalized();
        slack / n.dot(u)
    }
}

/// The radial tabletop: `1 − ‖x − o‖/ρ(x − o)` inside the body, `1` at the
/// origin `o`, `0` outside. Its level set at height `y ∈ (0, 1)` is the
/// boundary scaled by `1 − y` about `o`.
#[derive(Clone, Debug)]
pub struct Tabletop {
    profile: RadialProfile,
}

impl Tabletop {
    pub fn origin(&self) -> Point2 {
        self.profile.origin
    }

    pub fn evaluate(&self, p: Point2) -> f64 {
        let q = p - self.profile.origin;
        if q.x == 0.0 && q.y == 0.0 {
            return 1.0;
        }
        (1.0 - q.norm() / self.profile.rho(q)).max(0.0)
    }

    pub fn rho(&self, dir: Point2) -> f64 {
        self.profile.rho(dir)
    }
}

/// Grid-sampled heights, as read from and written to JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFieldSpec {
    /// `[xmin, ymin, xmax, ymax]`.
    pub bbox: [f64; 4],
    pub nx: usize,
    pub ny: usize,
    /// Row-major: `heights[j * nx + i]` sits at
    /// `(xmin + i·(xmax−xmin)/(nx−1), ymin + j·(ymax−ymin)/(ny−1))`.
    pub heights: Vec<f64>,
}

impl GridFieldSpec {
    /// Samples `f` on an `nx × ny` grid over `bbox`.
    pub fn sample(bbox: [f64; 4], nx: usize, ny: usize, f: impl Fn(Point2) -> f64) -> Self {
        let [x0, y0, x1, y1] = bbox;
        let mut heights = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let x = x0 + (x1 - x0) * i as f64 / (nx - 1) as f64;
                let y = y0 + (y1 - y0) * j as f64 / (ny - 1) as f64;
                heights.push(f(Point2::new(x, y)));
            }
        }
        GridFieldSpec { bbox, nx, ny, heights }
    }

    fn bilinear(&self, p: Point2) -> f64 {
        let [x0, y0, x1, y1] = self.bbox;
        let gx = (p.x - x0) / (x1 - x0) * (self.nx - 1) as f64;
        let gy = (p.y - y0) / (y1 - y0) * (self.ny - 1) as f64;
        if !(gx >= 0.0 && gy >= 0.0 && gx <= (self.nx - 1) as f64 && gy <= (self.ny - 1) as f64) {
            return 0.0;
        }
        let i = (gx.floor() as usize).min(self.nx - 2);
        let j = (gy.floor() as usize).min(self.ny - 2);
        let (tx, ty) = (gx - i as f64, gy - j as f64);
        let h = |i: usize, j: usize| self.heights[j * self.nx + i];
        let bottom = h(i, j) * (1.0 - tx) + h(i + 1, j) * tx;
        let top = h(i, j + 1) * (1.0 - tx) + h(i + 1, j + 1) * tx;
        bottom * (1.0 - ty) + top * ty
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Tabletop,
    Grid,
    User,
}

type UserFn = Arc<dyn Fn(Point2) -> f64 + Send + Sync>;

#[derive(Clone)]
enum FieldSource {
    Tabletop(Tabletop),
    Grid(GridFieldSpec),
    User(UserFn),
}

/// A nonnegative ground function supported on a convex body.
#[derive(Clone)]
pub struct HeightField {
    body: ConvexBody,
    source: FieldSource,
}

impl fmt::Debug for HeightField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeightField")
            .field("kind", &self.kind())
            .field("vertices", &self.body.len())
            .finish()
    }
}

impl HeightField {
    /// Wraps an arbitrary function; negative values are clamped to 0 and the
    /// field is 0 outside the body.
    pub fn from_fn(body: &ConvexBody, f: impl Fn(Point2) -> f64 + Send + Sync + 'static) -> Self {
        HeightField {
            body: body.clone(),
            source: FieldSource::User(Arc::new(f)),
        }
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn kind(&self) -> FieldKind {
        match self.source {
            FieldSource::Tabletop(_) => FieldKind::Tabletop,
            FieldSource::Grid(_) => FieldKind::Grid,
            FieldSource::User(_) => FieldKind::User,
        }
    }

    pub fn as_tabletop(&self) -> Option<&Tabletop> {
        match &self.source {
            FieldSource::Tabletop(t) => Some(t),
            _ => None,
        }
    }

    pub fn evaluate(&self, p: Point2) -> f64 {
        match &self.source {
            FieldSource::Tabletop(t) => t.evaluate(p),
            FieldSource::Grid(g) => {
                if self.body.classify_point(p, 0.0) == PointClass::Exterior {
                    0.0
                } else {
                    g.bilinear(p).max(0.0)
                }
            }
            FieldSource::User(f) => {
                if self.body.classify_point(p, 0.0) == PointClass::Exterior {
                    0.0
                } else {
                    f(p).max(0.0)
                }
            }
        }
    }

    /// Field rotated counterclockwise by `radians` about the origin, together
    /// with its body.
    pub fn rotated(&self, radians: f64) -> Result<HeightField> {
        let body = self.body.rotated(radians);
        Ok(match &self.source {
            FieldSource::Tabletop(t) => tabletop_about(&body, t.origin().rotate(radians))?,
            _ => {
                let inner = self.clone();
                HeightField {
                    body,
                    source: FieldSource::User(Arc::new(move |p: Point2| inner.evaluate(p.rotate(-radians)))),
                }
            }
        })
    }
}

/// The radial tabletop about the body's centroid.
pub fn tabletop(body: &ConvexBody) -> HeightField {
    tabletop_about(body, body.centroid()).expect("the centroid of a convex body is interior")
}

/// The radial tabletop about an interior `origin`.
pub fn tabletop_about(body: &ConvexBody, origin: Point2) -> Result<HeightField> {
    Ok(HeightField {
        body: body.clone(),
        source: FieldSource::Tabletop(Tabletop {
            profile: RadialProfile::new(body, origin)?,
        }),
    })
}

/// Bilinear interpolant of grid samples, zero outside `body`.
pub fn field_from_grid(body: &ConvexBody, grid: GridFieldSpec) -> Result<HeightField> {
    if grid.nx < 2 || grid.ny < 2 {
        return Err(Error::GridTooSmall(format!(
            "need at least 2×2 nodes, got {}×{}",
            grid.nx, grid.ny
        )));
    }
    if grid.heights.len() != grid.nx * grid.ny {
        return Err(Error::GridTooSmall(format!(
            "expected {} heights for a {}×{} grid, got {}",
            grid.nx * grid.ny,
            grid.nx,
            grid.ny,
            grid.heights.len()
        )));
    }
    let [x0, y0, x1, y1] = grid.bbox;
    if !(x1 > x0 && y1 > y0) || grid.bbox.iter().any(|v| !v.is_finite()) {
        return Err(Error::GridTooSmall(format!("degenerate bounding box {:?}", grid.bbox)));
    }
    let bb = body.bounding_box();
    let slack = body.default_tol();
    if bb.min.x < x0 - slack || bb.min.y < y0 - slack || bb.max.x > x1 + slack || bb.max.y > y1 + slack {
        return Err(Error::GridTooSmall(format!(
            "grid box {:?} does not cover the body's box [{}, {}, {}, {}]",
            grid.bbox, bb.min.x, bb.min.y, bb.max.x, bb.max.y
        )));
    }
    if let Some((index, &value)) = grid.heights.iter().enumerate().find(|(_, h)| !(**h >= 0.0)) {
        return Err(Error::NegativeHeight { index, value });
    }
    Ok(HeightField {
        body: body.clone(),
        source: FieldSource::Grid(grid),
    })
}

/// A candidate Table-Theorem solution and its quality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSquare {
    pub square: Square,
    /// Mean of the four vertex heights.
    pub y: f64,
    pub heights: [f64; 4],
    /// Largest pairwise height difference.
    pub residual: f64,
    /// `Σ (hᵢ − y)²`.
    pub energy: f64,
    pub center_in_body: bool,
    /// Common height is (numerically) zero and no vertex is interior.
    pub trivial: bool,
    pub start_index: usize,
    pub iterations: usize,
}

impl LevelSquare {
    pub fn evaluate(field: &HeightField, square: Square, level_tol: f64) -> Self {
        let body = field.body();
        let tol = body.default_tol();
        let verts = square.vertices();
        let heights = verts.map(|v| field.evaluate(v));
        let y = heights.iter().sum::<f64>() / 4.0;
        let energy = heights.iter().map(|h| (h - y) * (h - y)).sum();
        let max = heights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = heights.iter().copied().fold(f64::INFINITY, f64::min);
        let center_in_body = body.classify_point(square.center, tol) != PointClass::Exterior;
        let trivial =
            y <= level_tol && verts.iter().all(|&v| body.classify_point(v, tol) != PointClass::Interior);
        LevelSquare {
            square,
            y,
            heights,
            residual: max - min,
            energy,
            center_in_body,
            trivial,
            start_index: 0,
            iterations: 0,
        }
    }
}

/// `Σ (f(aᵢ) − f̄)²` over the square's vertices.
pub fn energy(field: &HeightField, square: &Square) -> f64 {
    let h = square.vertices().map(|v| field.evaluate(v));
    let mean = h.iter().sum::<f64>() / 4.0;
    h.iter().map(|x| (x - mean) * (x - mean)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSolverConfig {
    /// Interior start lattice is `grid_starts × grid_starts`.
    pub grid_starts: usize,
    /// Rotations tried at each lattice start.
    pub rotations: usize,
    pub max_iters: usize,
    pub level_tol: f64,
    /// Skip solutions with common height zero and no interior vertex.
    pub reject_trivial: bool,
}

impl Default for TableSolverConfig {
    fn default() -> Self {
        TableSolverConfig {
            grid_starts: 5,
            rotations: 8,
            max_iters: 2000,
            level_tol: 1e-8,
            reject_trivial: false,
        }
    }
}

/// Deterministic start ladder: centroid at rotation 0, then a lattice of
/// interior centers, each at `rotations` rotations spanning `[0, π/2)`.
pub fn start_ladder(body: &ConvexBody, cfg: &TableSolverConfig) -> Vec<(Point2, f64)> {
    let tol = body.default_tol();
    let mut starts = vec![(body.centroid(), 0.0)];
    let bbox = body.bounding_box();
    let g = cfg.grid_starts;
    for j in 0..g {
        for i in 0..g {
            let c = Point2::new(
                bbox.min.x + bbox.width() * (i as f64 + 0.5) / g as f64,
                bbox.min.y + bbox.height() * (j as f64 + 0.5) / g as f64,
            );
            if body.classify_point(c, tol) != PointClass::Interior {
                continue;
            }
            for r in 0..cfg.rotations {
                starts.push((c, FRAC_PI_2 * r as f64 / cfg.rotations as f64));
            }
        }
    }
    starts
}

/// Starts handed to the thread pool at once; the earliest accepted start in
/// a batch wins.
const START_BATCH: usize = 8;

/// Finds a level square of side `s` for `field`, with center in the body.
///
/// Each start is first checked as-is, then polished by Nelder-Mead over
/// `(cx, cy, rotation)`. The earliest start (in ladder order) producing an
/// accepted square wins.
pub fn solve_table(field: &HeightField, s: f64, cfg: &TableSolverConfig) -> Result<LevelSquare> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidSide(s));
    }
    let body = field.body();
    let tol = body.default_tol();
    let diam = body.diameter();
    let starts = start_ladder(body, cfg);

    let accept = |ls: &LevelSquare| {
        ls.residual <= cfg.level_tol && ls.center_in_body && !(cfg.reject_trivial && ls.trivial)
    };
    let objective = |x: &[f64]| {
        let c = Point2::new(x[0], x[1]);
        let sq = match Square::new(c, s, x[2]) {
            Ok(sq) => sq,
            Err(_) => return f64::INFINITY,
        };
        let e = energy(field, &sq);
        if body.classify_point(c, tol) == PointClass::Exterior {
            e + 1.0 + body.distance_to_boundary(c)
        } else {
            e
        }
    };
    let opts = NelderMeadOptions {
        max_iters: cfg.max_iters,
        f_target: (0.01 * cfg.level_tol).powi(2),
        x_tol: 1e-15 * diam.max(1.0),
    };

    let mut best_residual = f64::INFINITY;
    for (batch_no, batch) in starts.chunks(START_BATCH).enumerate() {
        let results: Vec<LevelSquare> = batch
            .par_iter()
            .enumerate()
            .map(|(k, &(c, rot))| {
                let index = batch_no * START_BATCH + k;
                let start = Square::new(c, s, rot).expect("side validated above");
                let mut ls = LevelSquare::evaluate(field, start, cfg.level_tol);
                ls.start_index = index;
                if accept(&ls) {
                    return ls;
                }
                let r = nelder_mead(objective, &[c.x, c.y, rot], &[0.05 * diam, 0.05 * diam, 0.1], &opts);
                let sq = Square::new(Point2::new(r.x[0], r.x[1]), s, r.x[2]).expect("finite simplex");
                let mut polished = LevelSquare::evaluate(field, sq, cfg.level_tol);
                polished.start_index = index;
                polished.iterations = r.iterations;
                polished
            })
            .collect();
        for ls in results {
            if accept(&ls) {
                return Ok(ls);
            }
            if ls.center_in_body && !(cfg.reject_trivial && ls.trivial) {
                best_residual = best_residual.min(ls.residual);
            }
        }
    }
    Err(Error::NoSolutionFound {
        starts: starts.len(),
        best_residual,
    })
}
