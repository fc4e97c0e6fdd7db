//! Inscribed squares: the tabletop pipeline for obtuse bodies, a brute-force
//! oracle for any convex body, and an independent verifier.
//!
//! The pipeline: for an obtuse body every square of side below `s*` is
//! nontrivial, so a level square of the radial tabletop at side `d < s*` has
//! a positive common height `y`. Its vertices lie on the boundary scaled by
//! `1 − y` about the tabletop's apex; scaling back by `1/(1 − y)` gives a
//! square inscribed in the boundary.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{rotation_distance, ConvexBody, Point2, Square};
use crate::obtuseness::{is_obtuse, s_star_search, ObtusenessConfig, SStarConfig};
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::table::{solve_table, tabletop_about, TableSolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InscribeMethod {
    TablePipeline,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub obtuseness: ObtusenessConfig,
    pub s_star: SStarConfig,
    /// Side used for the level square is `safety · s*`.
    pub safety: f64,
    /// `reject_trivial` is forced on.
    pub solver: TableSolverConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            obtuseness: ObtusenessConfig::default(),
            s_star: SStarConfig::default(),
            safety: 0.9,
            solver: TableSolverConfig::default(),
        }
    }
}

/// Intermediate values of the tabletop pipeline, in the body's coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub centroid: Point2,
    pub s_star_used: f64,
    pub d_used: f64,
    pub y: f64,
    pub residual: f64,
    pub level_square: Square,
    pub start_index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribedSquareResult {
    pub square: Square,
    /// Largest vertex-to-boundary distance.
    pub max_boundary_distance: f64,
    pub method: InscribeMethod,
    pub trace: Option<PipelineTrace>,
}

/// Runs the tabletop pipeline. Fails with [`Error::NotObtuse`] when the
/// sampled obtuseness test fails.
pub fn inscribe_via_table(body: &ConvexBody, cfg: &PipelineConfig) -> Result<InscribedSquareResult> {
    let report = is_obtuse(body, &cfg.obtuseness)?;
    if !report.obtuse {
        return Err(Error::NotObtuse {
            min_angle: report.min_interior_angle,
        });
    }
    let centroid = body.centroid();
    let centered = body.translated(-centroid);
    let s_star = s_star_search(&centered, &cfg.s_star)?.s_star;
    if !(s_star > 0.0) {
        return Err(Error::NotObtuse {
            min_angle: report.min_interior_angle,
        });
    }
    let d = cfg.safety * s_star;
    let field = tabletop_about(&centered, Point2::ORIGIN)?;
    let solver = TableSolverConfig {
        reject_trivial: true,
        ..cfg.solver
    };
    let level = solve_table(&field, d, &solver).map_err(|e| match e {
        Error::NoSolutionFound { starts, best_residual } => Error::SolverFailed(format!(
            "no nontrivial level square of side {d} from {starts} starts (best residual {best_residual:e})"
        )),
        other => other,
    })?;
    let y = level.y;
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::DegenerateY { y });
    }
    let square = level.square.scaled_about(Point2::ORIGIN, 1.0 / (1.0 - y)).translated(centroid);
    Ok(InscribedSquareResult {
        square,
        max_boundary_distance: max_boundary_distance(body, &square),
        method: InscribeMethod::TablePipeline,
        trace: Some(PipelineTrace {
            centroid,
            s_star_used: s_star,
            d_used: d,
            y,
            residual: level.residual,
            level_square: level.square.translated(centroid),
            start_index: level.start_index,
        }),
    })
}

pub fn max_boundary_distance(body: &ConvexBody, square: &Square) -> f64 {
    square
        .vertices()
        .iter()
        .map(|&v| body.distance_to_boundary(v))
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Arc-length-uniform boundary samples used as diagonal endpoints.
    pub n_boundary: usize,
    /// Acceptance distance to the boundary, also the deduplication radius.
    pub eps: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            n_boundary: 256,
            eps: 1e-6,
        }
    }
}

/// All inscribed squares found by pairing boundary samples as diagonals,
/// then polishing each candidate by Nelder-Mead over center, side and
/// rotation. Sorted by descending side.
pub fn oracle_inscribed_squares(body: &ConvexBody, cfg: &OracleConfig) -> Result<Vec<Square>> {
    if cfg.n_boundary < 32 {
        return Err(Error::InvalidArgument(format!(
            "oracle needs at least 32 boundary samples, got {}",
            cfg.n_boundary
        )));
    }
    if !(cfg.eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {}", cfg.eps)));
    }
    let pts = body.boundary_samples(cfg.n_boundary);
    let spacing = body.perimeter() / cfg.n_boundary as f64;
    let threshold = cfg.eps.max(2.0 * spacing);
    let min_diag = 8.0 * spacing;
    let min_side = 4.0 * spacing;

    let mut candidates: Vec<(f64, Square)> = (0..pts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let pts = &pts;
            (i + 1..pts.len()).filter_map(move |j| {
                let (p, q) = (pts[i], pts[j]);
                if p.distance(q) < min_diag {
                    return None;
                }
                let m = (p + q) * 0.5;
                let h = (q - p).perp() * 0.5;
                let d1 = body.distance_to_boundary(m + h);
                if d1 > threshold {
                    return None;
                }
                let d2 = body.distance_to_boundary(m - h);
                if d2 > threshold {
                    return None;
                }
                let sq = Square::from_vertices(&[p, m - h, q, m + h]).ok()?;
                Some((d1.max(d2), sq))
            })
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    let cluster_tol = 2.0 * spacing;
    let mut seeds: Vec<Square> = Vec::new();
    for (_, sq) in candidates {
        if !seeds.iter().any(|s| squares_close(s, &sq, cluster_tol)) {
            seeds.push(sq);
        }
    }

    let diam = body.diameter();
    let opts = NelderMeadOptions {
        max_iters: 4000,
        f_target: (1e-3 * cfg.eps).powi(2),
        x_tol: 1e-15 * diam.max(1.0),
    };
    let refined: Vec<Square> = seeds
        .par_iter()
        .filter_map(|seed| {
            let objective = |x: &[f64]| match Square::new(Point2::new(x[0], x[1]), x[2], x[3]) {
                Ok(sq) => sq.vertices().iter().map(|&v| body.distance_to_boundary(v).powi(2)).sum(),
                Err(_) => f64::INFINITY,
            };
            let mut x = vec![seed.center.x, seed.center.y, seed.side, seed.rotation.radians()];
            let mut step = spacing;
            // the objective has kinks at polygon vertices, so restart a
            // stalled simplex with a smaller one
            for _ in 0..REFINE_RESTARTS {
                let steps = [step, step, step, step / seed.side.max(spacing)];
                x = nelder_mead(objective, &x, &steps, &opts).x;
                let sq = Square::new(Point2::new(x[0], x[1]), x[2], x[3]).ok()?;
                if max_boundary_distance(body, &sq) <= cfg.eps {
                    return (sq.side >= min_side).then_some(sq);
                }
                step *= 0.1;
            }
            None
        })
        .collect();

    let mut out: Vec<Square> = Vec::new();
    for sq in refined {
        if !out.iter().any(|s| squares_close(s, &sq, cfg.eps)) {
            out.push(sq);
        }
    }
    out.sort_by(|a, b| b.side.total_cmp(&a.side));
    Ok(out)
}

const REFINE_RESTARTS: usize = 4;

/// Closeness in (center, side, rotation) space.
fn squares_close(a: &Square, b: &Square, tol: f64) -> bool {
    a.center.distance(b.center) <= tol
        && (a.side - b.side).abs() <= tol
        && rotation_distance(a.rotation, b.rotation) <= tol
}

/// Independent check of a candidate inscribed square given by its vertices
/// in cyclic order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribedCheck {
    pub max_boundary_distance: f64,
    /// `(longest side − shortest side) / mean side`.
    pub side_spread: f64,
    /// `|cos|` of the angle between the diagonals.
    pub diagonal_orthogonality_error: f64,
    /// Relative difference of the two diagonal lengths.
    pub diagonal_length_error: f64,
    pub pass: bool,
}

/// Shape tolerance used by [`verify_inscribed`].
pub const SHAPE_TOL: f64 = 1e-9;

pub fn verify_inscribed(body: &ConvexBody, square: &Square, eps: f64) -> InscribedCheck {
    verify_inscribed_vertices(body, &square.vertices(), eps)
}

pub fn verify_inscribed_vertices(body: &ConvexBody, v: &[Point2; 4], eps: f64) -> InscribedCheck {
    let sides: Vec<f64> = (0..4).map(|k| v[k].distance(v[(k + 1) % 4])).collect();
    let mean = sides.iter().sum::<f64>() / 4.0;
    let (lo, hi) = sides
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    let d1 = v[2] - v[0];
    let d2 = v[3] - v[1];
    let side_spread = (hi - lo) / mean;
    let diagonal_orthogonality_error = (d1.dot(d2) / (d1.norm() * d2.norm())).abs();
    let diagonal_length_error = (d1.norm() - d2.norm()).abs() / d1.norm().max(d2.norm());
    let max_boundary_distance = v.iter().map(|&p| body.distance_to_boundary(p)).fold(0.0, f64::max);
    let pass = max_boundary_distance <= eps
        && side_spread <= SHAPE_TOL
        && diagonal_orthogonality_error <= SHAPE_TOL
        && diagonal_length_error <= SHAPE_TOL;
    InscribedCheck {
        max_boundary_distance,
        side_spread,
        diagonal_orthogonality_error,
        diagonal_length_error,
        pass,
    }
}

/// Distance between two squares as unlabeled vertex sets (Hausdorff).
pub fn square_set_distance(a: &Square, b: &Square) -> f64 {
    let (va, vb) = (a.vertices(), b.vertices());
    let one_way = |x: &[Point2; 4], y: &[Point2; 4]| {
        x.iter()
            .map(|p| y.iter().map(|q| p.distance(*q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(&va, &vb).max(one_way(&vb, &va))
}

/// Rotation of `square` reduced to `[0, π/2)`; convenience for reports.
pub fn canonical_rotation(square: &Square) -> f64 {
    square.rotation.radians().rem_euclid(FRAC_PI_2)
}
