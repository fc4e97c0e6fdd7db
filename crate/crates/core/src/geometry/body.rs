use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::Point2;
use crate::error::{Error, Result};

/// Relative tolerance used when discarding (nearly) collinear hull vertices.
const COLLINEAR_REL_TOL: f64 = 1e-14;

/// Where a [`ConvexBody`] came from. Smooth curves are always polygonized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Polygon,
    RegularNgon { n: usize, circumradius: f64 },
    EllipseSampled { a: f64, b: f64, samples: usize },
    DiskSampled { radius: f64, samples: usize },
}

/// Classification of a point relative to a body, up to a boundary tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min: Point2,
    pub max: Point2,
}

impl BoundingBox {
    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn contains(&self, other: &BoundingBox) -> bool {
        self.min.x <= other.min.x
            && self.min.y <= other.min.y
            && self.max.x >= other.max.x
            && self.max.y >= other.max.y
    }
}

/// A compact convex region, stored as a strictly convex counterclockwise
/// polygon.
///
/// Every constructor goes through the convex hull, so arbitrary point clouds
/// are accepted; hulls with fewer than three vertices are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub struct ConvexBody {
    vertices: Vec<Point2>,
    normals: Vec<Point2>,
    provenance: Provenance,
    diameter: f64,
}

#[derive(Serialize, Deserialize)]
struct BodyRepr {
    vertices: Vec<Point2>,
    provenance: Provenance,
}

impl TryFrom<BodyRepr> for ConvexBody {
    type Error = Error;
    fn try_from(repr: BodyRepr) -> Result<Self> {
        ConvexBody::from_points(&repr.vertices, repr.provenance)
    }
}

impl From<ConvexBody> for BodyRepr {
    fn from(body: ConvexBody) -> Self {
        BodyRepr {
            vertices: body.vertices,
            provenance: body.provenance,
        }
    }
}

impl ConvexBody {
    /// Convex hull of `points`, counterclockwise, collinear points removed.
    pub fn from_points(points: &[Point2], provenance: Provenance) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let vertices = convex_hull(points);
        if vertices.len() < 3 {
            return Err(Error::DegenerateBody(vertices.len()));
        }
        let n = vertices.len();
        let normals = (0..n)
            .map(|i| {
                let e = vertices[(i + 1) % n] - vertices[i];
                Point2::new(e.y, -e.x).normalized()
            })
            .collect();
        let mut diameter = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                diameter = diameter.max(vertices[i].distance(vertices[j]));
            }
        }
        Ok(ConvexBody {
            vertices,
            normals,
            provenance,
            diameter,
        })
    }

    pub fn polygon(points: &[Point2]) -> Result<Self> {
        Self::from_points(points, Provenance::Polygon)
    }

    /// Regular `n`-gon centered at the origin with a vertex at angle 0.
    pub fn regular_ngon(n: usize, circumradius: f64) -> Result<Self> {
        if n < 3 || !(circumradius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "regular_ngon needs n >= 3 and circumradius > 0 (got n={n}, r={circumradius})"
            )));
        }
        let pts: Vec<Point2> = (0..n)
            .map(|k| Point2::polar(circumradius, TAU * k as f64 / n as f64))
            .collect();
        Self::from_points(&pts, Provenance::RegularNgon { n, circumradius })
    }

    /// Ellipse with semi-axes `a` (x) and `b` (y), sampled at parameter
    /// values `2πk/samples`.
    pub fn ellipse(a: f64, b: f64, samples: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || samples < 3 {
            return Err(Error::InvalidArgument(format!(
                "ellipse needs a, b > 0 and samples >= 3 (got a={a}, b={b}, samples={samples})"
            )));
        }
        let pts: Vec<Point2> = (0..samples)
            .map(|k| {
                let t = TAU * k as f64 / samples as f64;
                Point2::new(a * t.cos(), b * t.sin())
            })
            .collect();
        Self::from_points(&pts, Provenance::EllipseSampled { a, b, samples })
    }

    pub fn disk(radius: f64, samples: usize) -> Result<Self> {
        if !(radius > 0.0) || samples < 3 {
            return Err(Error::InvalidArgument(format!(
                "disk needs radius > 0 and samples >= 3 (got r={radius}, samples={samples})"
            )));
        }
        let pts: Vec<Point2> = (0..samples)
            .map(|k| Point2::polar(radius, TAU * k as f64 / samples as f64))
            .collect();
        Self::from_points(&pts, Provenance::DiskSampled { radius, samples })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (wrapping).
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    /// Outward unit normal of edge `i`.
    pub fn normal(&self, i: usize) -> Point2 {
        self.normals[i % self.normals.len()]
    }

    pub fn normals(&self) -> &[Point2] {
        &self.normals
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Default boundary tolerance, `1e-9 · diameter`.
    pub fn default_tol(&self) -> f64 {
        1e-9 * self.diameter
    }

    pub fn area(&self) -> f64 {
        let o = self.vertices[0];
        let mut twice = 0.0;
        for i in 1..self.len() - 1 {
            twice += (self.vertices[i] - o).cross(self.vertices[i + 1] - o);
        }
        0.5 * twice
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                a.distance(b)
            })
            .sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2 {
        let o = self.vertices[0];
        let mut acc = Point2::ORIGIN;
        let mut twice_area = 0.0;
        for i in 1..self.len() - 1 {
            let a = self.vertices[i] - o;
            let b = self.vertices[i + 1] - o;
            let w = a.cross(b);
            twice_area += w;
            acc += (a + b) * w;
        }
        o + acc / (3.0 * twice_area)
    }

    pub fn bounding_box(&self) -> BoundingBox {
        let mut min = self.vertices[0];
        let mut max = self.vertices[0];
        for p in &self.vertices[1..] {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        BoundingBox { min, max }
    }

    /// Interior angle at vertex `i`, in `(0, π)`.
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let v = self.vertex(i);
        let to_next = self.vertex(i + 1) - v;
        let to_prev = self.vertex(i + n - 1) - v;
        to_next.cross(to_prev).atan2(to_next.dot(to_prev))
    }

    pub fn interior_angles(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.interior_angle(i)).collect()
    }

    /// Index and value of the smallest interior angle (first on ties).
    pub fn min_angle_vertex(&self) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (i, a) in self.interior_angles().into_iter().enumerate() {
            if a < best.1 {
                best = (i, a);
            }
        }
        best
    }

    /// Slack of `p` against edge `i`'s supporting line: positive inside.
    pub fn edge_slack(&self, i: usize, p: Point2) -> f64 {
        self.normal(i).dot(self.vertex(i) - p)
    }

    pub fn distance_to_boundary(&self, p: Point2) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                segment_distance(p, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Closest point of the boundary to `p`.
    pub fn nearest_boundary_point(&self, p: Point2) -> Point2 {
        let mut best = (f64::INFINITY, self.vertices[0]);
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            let q = segment_projection(p, a, b);
            let d = p.distance(q);
            if d < best.0 {
                best = (d, q);
            }
        }
        best.1
    }

    /// Interior iff `p` clears every edge line by more than `tol`; Boundary
    /// iff within `tol` of the boundary; Exterior otherwise.
    pub fn classify_point(&self, p: Point2, tol: f64) -> PointClass {
        let min_slack = (0..self.len())
            .map(|i| self.edge_slack(i, p))
            .fold(f64::INFINITY, f64::min);
        if min_slack > tol {
            PointClass::Interior
        } else if self.distance_to_boundary(p) <= tol {
            PointClass::Boundary
        } else {
            PointClass::Exterior
        }
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.classify_point(p, tol) != PointClass::Exterior
    }

    /// The parameter interval `[t0, t1]` (with `t0 >= 0`) of the ray
    /// `origin + t·dir` that lies inside the body, if any.
    pub fn ray_clip(&self, origin: Point2, dir: Point2) -> Option<(f64, f64)> {
        let mut t0 = 0.0_f64;
        let mut t1 = f64::INFINITY;
        for i in 0..self.len() {
            let n = self.normal(i);
            let slack = n.dot(self.vertex(i) - origin);
            let rate = n.dot(dir);
            if rate > 0.0 {
                t1 = t1.min(slack / rate);
            } else if rate < 0.0 {
                t0 = t0.max(slack / rate);
            } else if slack < 0.0 {
                return None;
            }
        }
        (t0 <= t1).then_some((t0, t1))
    }

    /// Distance from the origin to the boundary along unit direction `u`.
    pub fn radial_scale(&self, u: Point2) -> Result<f64> {
        if self.classify_point(Point2::ORIGIN, self.default_tol()) != PointClass::Interior {
            return Err(Error::OriginNotInterior);
        }
        let dir = u.normalized();
        match self.ray_clip(Point2::ORIGIN, dir) {
            Some((_, t1)) => Ok(t1),
            None => Err(Error::OriginNotInterior),
        }
    }

    /// Point at arc length `s` along the boundary, starting from vertex 0
    /// and walking counterclockwise. `s` wraps modulo the perimeter.
    pub fn point_at_arclength(&self, s: f64) -> Point2 {
        let perimeter = self.perimeter();
        let mut s = s.rem_euclid(perimeter);
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            let len = a.distance(b);
            if s <= len {
                return a.lerp(b, s / len);
            }
            s -= len;
        }
        self.vertices[0]
    }

    /// `n` boundary points at uniform arc-length spacing, starting at vertex 0.
    pub fn boundary_samples(&self, n: usize) -> Vec<Point2> {
        let lengths: Vec<f64> = (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                a.distance(b)
            })
            .collect();
        let perimeter: f64 = lengths.iter().sum();
        let mut out = Vec::with_capacity(n);
        let mut edge = 0;
        let mut start = 0.0;
        for k in 0..n {
            let target = perimeter * k as f64 / n as f64;
            while edge + 1 < lengths.len() && start + lengths[edge] < target {
                start += lengths[edge];
                edge += 1;
            }
            let (a, b) = self.edge(edge);
            let t = ((target - start) / lengths[edge]).clamp(0.0, 1.0);
            out.push(a.lerp(b, t));
        }
        out
    }

    pub fn translated(&self, t: Point2) -> ConvexBody {
        self.map_points(|p| p + t)
    }

    /// Scaled by `factor > 0` about the origin.
    pub fn scaled(&self, factor: f64) -> ConvexBody {
        self.map_points(|p| p * factor)
    }

    /// Rotated counterclockwise by `radians` about the origin.
    pub fn rotated(&self, radians: f64) -> ConvexBody {
        self.map_points(|p| p.rotate(radians))
    }

    /// Translated so that the area centroid sits at the origin.
    pub fn centered(&self) -> ConvexBody {
        self.translated(-self.centroid())
    }

    fn map_points(&self, f: impl Fn(Point2) -> Point2) -> ConvexBody {
        let pts: Vec<Point2> = self.vertices.iter().map(|&p| f(p)).collect();
        ConvexBody::from_points(&pts, self.provenance.clone())
            .expect("similarity transforms preserve nondegeneracy")
    }
}

pub fn segment_projection(p: Point2, a: Point2, b: Point2) -> Point2 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return a;
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    a + ab * t
}

pub fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    p.distance(segment_projection(p, a, b))
}

/// Andrew's monotone chain; output is counterclockwise starting from the
/// lexicographically smallest point, with (nearly) collinear points removed.
fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turns_left = |o: Point2, a: Point2, b: Point2| {
        let (oa, ob) = (a - o, b - o);
        oa.cross(ob) > COLLINEAR_REL_TOL * oa.norm() * ob.norm()
    };
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Interior angle of a regular `n`-gon.
pub fn regular_interior_angle(n: usize) -> f64 {
    PI - TAU / n as f64
}
