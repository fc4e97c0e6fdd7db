//! Sector-radius function, obtuseness classification, the nontriviality
//! threshold `s*`, and a lower-semicontinuity probe.
//!
//! The sector-radius function at a point `x` of a body `D` is the supremum of
//! `‖v‖` over truncated sectors `T_{v,θ}(x) ⊂ D` with `θ > π/2`. The open angle
//! condition is replaced by a margin: [`f_delta`] maximizes `‖v‖` over sectors
//! of angle exactly `π/2 + δ`. This is attained, nonincreasing in `δ`, and
//! increases to the supremum as `δ → 0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ApexConstraints, ConvexBody, Point2, PointClass, TruncatedSector};
use crate::optim::{compass_search, golden_section_max};

/// Number of best coarse orientations that get golden-section refinement.
const REFINED_ORIENTATIONS: usize = 3;
const ORIENTATION_TOL: f64 = 1e-11;

/// A contained sector witnessing a positive sector radius at `apex`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorCertificate {
    pub apex: Point2,
    pub v: Point2,
    pub theta: f64,
    /// `theta − π/2`.
    pub delta: f64,
}

impl SectorCertificate {
    pub fn sector(&self) -> TruncatedSector {
        TruncatedSector::new(self.apex, self.v, self.theta)
            .expect("certificates are built from valid sectors")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorRadius {
    pub value: f64,
    pub certificate: Option<SectorCertificate>,
}

/// Largest `‖v‖` such that a sector of angle `π/2 + delta` with apex `x` fits
/// in `body`.
///
/// Orientations are scanned on a uniform grid of `dir_samples` directions,
/// augmented with the orientations that align the sector with any edge passing
/// through `x`; the best few are refined by golden-section search. For a
/// fixed orientation the maximal radius is computed in closed form.
pub fn f_delta(body: &ConvexBody, x: Point2, delta: f64, dir_samples: usize) -> Result<SectorRadius> {
    if !(delta > 0.0 && delta <= FRAC_PI_2) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, π/2], got {delta}")));
    }
    if dir_samples < 8 {
        return Err(Error::InvalidArgument(format!("dir_samples must be >= 8, got {dir_samples}")));
    }
    if body.classify_point(x, body.default_tol()) == PointClass::Exterior {
        return Err(Error::PointOutsideBody { x: x.x, y: x.y });
    }
    let theta = FRAC_PI_2 + delta;
    let constraints = ApexConstraints::new(body, x);
    let radius_at = |alpha: f64| constraints.max_radius(Point2::from_angle(alpha), theta);

    let mut candidates: Vec<(f64, f64)> = (0..dir_samples)
        .map(|k| {
            let a = TAU * k as f64 / dir_samples as f64;
            (a, radius_at(a))
        })
        .collect();
    let eps = body.default_tol();
    for i in 0..body.len() {
        if body.edge_slack(i, x).abs() <= eps {
            let (a, b) = body.edge(i);
            let along = (b - a).angle();
            let last = along + PI - theta;
            for alpha in [along, last, 0.5 * (along + last)] {
                candidates.push((alpha, radius_at(alpha)));
            }
        }
    }

    // stable: ties keep scan order
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&i, &j| candidates[j].1.total_cmp(&candidates[i].1));
    let mut best = candidates[order[0]];
    if best.1 > 0.0 {
        let half_width = TAU / dir_samples as f64;
        for &i in order.iter().take(REFINED_ORIENTATIONS) {
            let (a0, r0) = candidates[i];
            if r0 <= 0.0 {
                break;
            }
            let (a, r) = golden_section_max(radius_at, a0 - half_width, a0 + half_width, ORIENTATION_TOL, 200);
            if r > best.1 {
                best = (a, r);
            }
        }
    }

    let (alpha, value) = best;
    let certificate = (value > 0.0).then(|| SectorCertificate {
        apex: x,
        v: Point2::polar(value, alpha),
        theta,
        delta,
    });
    Ok(SectorRadius { value, certificate })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObtusenessConfig {
    pub delta: f64,
    pub dir_samples: usize,
    /// Arc-length-uniform boundary samples evaluated in addition to vertices.
    pub boundary_samples: usize,
    /// The angle criterion calls a polygon obtuse iff every interior angle
    /// exceeds `π/2 + angle_margin`.
    pub angle_margin: f64,
}

impl Default for ObtusenessConfig {
    fn default() -> Self {
        ObtusenessConfig {
            delta: 1e-3,
            dir_samples: 64,
            boundary_samples: 256,
            angle_margin: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryValue {
    pub point: Point2,
    pub f_delta: f64,
    pub certificate: Option<SectorCertificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObtusenessReport {
    /// Sampled verdict: every evaluated boundary point has `f_delta > 0`.
    pub obtuse: bool,
    pub delta_used: f64,
    /// Verdict of the interior-angle criterion.
    pub angle_criterion_obtuse: bool,
    pub angle_margin: f64,
    pub min_interior_angle: f64,
    pub min_angle_vertex: usize,
    pub verdicts_agree: bool,
    /// True when the two verdicts disagree only because the smallest angle
    /// lies between `π/2 + angle_margin` and `π/2 + delta`.
    pub disagreement_in_band: bool,
    pub worst_point: Point2,
    pub worst_value: f64,
    pub per_point: Vec<BoundaryValue>,
}

/// Classifies `body` as obtuse by evaluating [`f_delta`] at every vertex and
/// at `cfg.boundary_samples` arc-length-uniform boundary points, and
/// cross-checks against the interior-angle criterion.
pub fn is_obtuse(body: &ConvexBody, cfg: &ObtusenessConfig) -> Result<ObtusenessReport> {
    let mut points: Vec<Point2> = body.vertices().to_vec();
    points.extend(body.boundary_samples(cfg.boundary_samples.max(body.len())));

    let per_point = points
        .par_iter()
        .map(|&p| {
            f_delta(body, p, cfg.delta, cfg.dir_samples).map(|r| BoundaryValue {
                point: p,
                f_delta: r.value,
                certificate: r.certificate,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut worst = 0;
    for (i, bv) in per_point.iter().enumerate() {
        if bv.f_delta < per_point[worst].f_delta {
            worst = i;
        }
    }
    let obtuse = per_point.iter().all(|bv| bv.f_delta > 0.0);

    let (min_angle_vertex, min_interior_angle) = body.min_angle_vertex();
    let angle_criterion_obtuse = min_interior_angle > FRAC_PI_2 + cfg.angle_margin;
    let verdicts_agree = obtuse == angle_criterion_obtuse;
    let band_lo = FRAC_PI_2 + cfg.angle_margin.min(cfg.delta) - 1e-9;
    let band_hi = FRAC_PI_2 + cfg.angle_margin.max(cfg.delta) + 1e-9;
    let disagreement_in_band =
        !verdicts_agree && (band_lo..=band_hi).contains(&min_interior_angle);

    Ok(ObtusenessReport {
        obtuse,
        delta_used: cfg.delta,
        angle_criterion_obtuse,
        angle_margin: cfg.angle_margin,
        min_interior_angle,
        min_angle_vertex,
        verdicts_agree,
        disagreement_in_band,
        worst_point: per_point[worst].point,
        worst_value: per_point[worst].f_delta,
        per_point,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SStarConfig {
    pub delta: f64,
    pub dir_samples: usize,
    /// Interior lattice is `grid × grid` over the bounding box.
    pub grid: usize,
    pub boundary_samples: usize,
    /// Number of best lattice points and best boundary points refined locally.
    pub refine: usize,
}

impl Default for SStarConfig {
    fn default() -> Self {
        SStarConfig {
            delta: 1e-3,
            dir_samples: 64,
            grid: 64,
            boundary_samples: 256,
            refine: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SStarResult {
    pub s_star: f64,
    pub minimizer: Point2,
    pub evaluations: usize,
}

/// Minimum of [`f_delta`] over the body with default settings apart from
/// `delta` and `grid`.
pub fn s_star(body: &ConvexBody, delta: f64, grid: usize) -> Result<f64> {
    let cfg = SStarConfig {
        delta,
        grid,
        ..SStarConfig::default()
    };
    s_star_search(body, &cfg).map(|r| r.s_star)
}

/// Minimizes [`f_delta`] over an interior lattice, the vertices and boundary
/// samples, then refines the best lattice points by compass search and the
/// best boundary points by golden-section search along the boundary.
///
/// The result is an upper bound on the minimum of `f_delta`.
pub fn s_star_search(body: &ConvexBody, cfg: &SStarConfig) -> Result<SStarResult> {
    if cfg.grid < 8 {
        return Err(Error::InvalidArgument(format!("grid must be >= 8, got {}", cfg.grid)));
    }
    // work relative to vertex 0 so the search is translation invariant
    let anchor = body.vertex(0);
    let local = body.translated(-anchor);
    let tol = local.default_tol();
    let f = |p: Point2| f_delta(&local, p, cfg.delta, cfg.dir_samples).map(|r| r.value);

    let bbox = local.bounding_box();
    let lattice: Vec<Point2> = (0..cfg.grid)
        .flat_map(|j| (0..cfg.grid).map(move |i| (i, j)))
        .map(|(i, j)| {
            let g = cfg.grid as f64;
            Point2::new(
                bbox.min.x + bbox.width() * (i as f64 + 0.5) / g,
                bbox.min.y + bbox.height() * (j as f64 + 0.5) / g,
            )
        })
        .filter(|&p| local.classify_point(p, tol) != PointClass::Exterior)
        .collect();
    let mut boundary: Vec<Point2> = local.vertices().to_vec();
    boundary.extend(local.boundary_samples(cfg.boundary_samples));

    let lattice_vals = lattice.par_iter().map(|&p| f(p)).collect::<Result<Vec<_>>>()?;
    let boundary_vals = boundary.par_iter().map(|&p| f(p)).collect::<Result<Vec<_>>>()?;
    let mut evaluations = lattice.len() + boundary.len();

    let mut best = (Point2::ORIGIN, f64::INFINITY);
    for (&p, &v) in boundary.iter().zip(&boundary_vals).chain(lattice.iter().zip(&lattice_vals)) {
        if v < best.1 {
            best = (p, v);
        }
    }

    if best.1 > 0.0 {
        let lattice_seeds = best_indices(&lattice_vals, cfg.refine);
        let step = bbox.width().min(bbox.height()) / cfg.grid as f64;
        let min_step = 1e-9 * local.diameter();
        let interior: Vec<(Point2, f64, usize)> = lattice_seeds
            .par_iter()
            .map(|&i| {
                let count = std::cell::Cell::new(0usize);
                let objective = |x: f64, y: f64| {
                    let p = Point2::new(x, y);
                    if local.classify_point(p, tol) == PointClass::Exterior {
                        return None;
                    }
                    count.set(count.get() + 1);
                    f(p).ok()
                };
                let start = lattice[i];
                let ((x, y), v) = compass_search(objective, (start.x, start.y), lattice_vals[i], step, min_step);
                (Point2::new(x, y), v, count.get())
            })
            .collect();

        let perimeter = local.perimeter();
        let spacing = perimeter / boundary.len().max(1) as f64;
        let arclengths = boundary_arclengths(&local, &boundary);
        let boundary_seeds = best_indices(&boundary_vals, cfg.refine);
        let along: Vec<(Point2, f64, usize)> = boundary_seeds
            .par_iter()
            .map(|&i| {
                let count = std::cell::Cell::new(0usize);
                let neg = |s: f64| {
                    count.set(count.get() + 1);
                    -f(local.point_at_arclength(s)).unwrap_or(f64::INFINITY)
                };
                let s0 = arclengths[i];
                let (s, nv) = golden_section_max(neg, s0 - spacing, s0 + spacing, 1e-10 * perimeter, 200);
                (local.point_at_arclength(s), -nv, count.get())
            })
            .collect();

        for (p, v, n) in interior.into_iter().chain(along) {
            evaluations += n;
            if v < best.1 {
                best = (p, v);
            }
        }
    }

    Ok(SStarResult {
        s_star: best.1,
        minimizer: best.0 + anchor,
        evaluations,
    })
}

/// Indices of the `k` smallest values, ties in index order.
fn best_indices(values: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    order.truncate(k);
    order
}

/// Arc-length coordinate of each boundary point (vertex 0 at zero).
fn boundary_arclengths(body: &ConvexBody, points: &[Point2]) -> Vec<f64> {
    let mut starts = Vec::with_capacity(body.len());
    let mut acc = 0.0;
    for i in 0..body.len() {
        starts.push(acc);
        let (a, b) = body.edge(i);
        acc += a.distance(b);
    }
    points
        .iter()
        .map(|&p| {
            let mut best = (f64::INFINITY, 0.0);
            for (i, &s0) in starts.iter().enumerate() {
                let (a, b) = body.edge(i);
                let ab = b - a;
                let t = ((p - a).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0);
                let d = p.distance(a + ab * t);
                if d < best.0 {
                    best = (d, s0 + t * ab.norm());
                }
            }
            best.1
        })
        .collect()
}

/// Result of probing lower semicontinuity of [`f_delta`] at a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LscOutcome {
    /// Every sample within `radius` has `f_delta > f_delta(x) − ε`.
    Holds {
        radius: f64,
        f_at_point: f64,
        neighborhood_min: f64,
    },
    /// Even the smallest probe radius has a sample violating the inequality.
    Failure {
        f_at_point: f64,
        smallest_radius: f64,
        neighborhood_min: f64,
    },
}

impl LscOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, LscOutcome::Holds { .. })
    }
}

/// Samples per probe circle in [`lsc_probe`].
pub const LSC_RING_SAMPLES: usize = 32;

/// Checks `f_delta(y) > f_delta(x) − epsilon` on sample circles of the given
/// radii around `x` (clipped to the body).
///
/// `radii` must be positive and sorted descending. The neighborhood of radius
/// `r` consists of all listed circles of radius `≤ r`; the first (largest)
/// radius whose neighborhood satisfies the inequality is returned.
pub fn lsc_probe(
    body: &ConvexBody,
    x: Point2,
    epsilon: f64,
    delta: f64,
    dir_samples: usize,
    radii: &[f64],
) -> Result<LscOutcome> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0)) || radii.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(
            "probe radii must be positive and sorted descending".into(),
        ));
    }
    let f_x = f_delta(body, x, delta, dir_samples)?.value;
    let tol = body.default_tol();

    let ring_min: Vec<f64> = radii
        .par_iter()
        .map(|&r| {
            (0..LSC_RING_SAMPLES)
                .map(|k| x + Point2::polar(r, TAU * (k as f64 + 0.5) / LSC_RING_SAMPLES as f64))
                .filter(|&y| body.classify_point(y, tol) != PointClass::Exterior)
                .filter_map(|y| f_delta(body, y, delta, dir_samples).ok())
                .map(|s| s.value)
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    // neighborhood minimum over this ring and every smaller one
    let mut suffix = vec![f64::INFINITY; radii.len()];
    let mut acc = f64::INFINITY;
    for i in (0..radii.len()).rev() {
        acc = acc.min(ring_min[i]);
        suffix[i] = acc;
    }
    let threshold = f_x - epsilon;
    for (i, &r) in radii.iter().enumerate() {
        if suffix[i] > threshold {
            return Ok(LscOutcome::Holds {
                radius: r,
                f_at_point: f_x,
                neighborhood_min: suffix[i],
            });
        }
    }
    Ok(LscOutcome::Failure {
        f_at_point: f_x,
        smallest_radius: radii[radii.len() - 1],
        neighborhood_min: suffix[radii.len() - 1],
    })
}

/// Default probe radii: `diameter · 2^{-k}` for `k = 2..=22`.
pub fn default_probe_radii(body: &ConvexBody) -> Vec<f64> {
    (2..=22).map(|k| body.diameter() * 0.5f64.powi(k)).collect()
}
