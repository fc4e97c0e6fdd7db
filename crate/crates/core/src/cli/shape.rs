use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexBody, Point2};

use super::CliError;

pub const DEFAULT_SAMPLES: usize = 256;

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn one() -> f64 {
    1.0
}

/// Shape input, as JSON (`{"type": "regular_ngon", "n": 5}`) or as an inline
/// spec (see [`ShapeSpec::parse_inline`]).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ShapeSpec {
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    RegularNgon {
        n: usize,
        #[serde(default = "one")]
        circumradius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Disk {
        #[serde(default = "one")]
        radius: f64,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

fn parse_f64(field: &str, text: &str) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Parse(format!("field `{field}`: expected a number, got {text:?}")))
}

impl ShapeSpec {
    /// Inline forms:
    ///
    /// - `ngon:N` or `ngon:N:R`
    /// - `disk` or `disk:R`
    /// - `ellipse:A,B`
    /// - `polygon:x0,y0;x1,y1;...`
    /// - any JSON object accepted by [`ShapeSpec::from_json`]
    ///
    /// `samples` applies to disks and ellipses.
    pub fn parse_inline(text: &str, samples: usize) -> Result<Self, CliError> {
        let text = text.trim();
        if text.starts_with('{') {
            return Self::from_json(text);
        }
        let (kind, rest) = match text.split_once(':') {
            Some((k, r)) => (k.trim(), Some(r)),
            None => (text, None),
        };
        let spec = match kind {
            "ngon" | "regular_ngon" => {
                let rest = rest.ok_or_else(|| CliError::Parse("ngon needs a vertex count, e.g. ngon:5".into()))?;
                let mut parts = rest.split(':');
                let n_text = parts.next().unwrap_or_default();
                let n = n_text.trim().parse::<usize>().map_err(|_| {
                    CliError::Parse(format!("field `n`: expected an integer >= 3, got {n_text:?}"))
                })?;
                let circumradius = match parts.next() {
                    Some(r) => parse_f64("circumradius", r)?,
                    None => 1.0,
                };
                ShapeSpec::RegularNgon { n, circumradius }
            }
            "disk" => ShapeSpec::Disk {
                radius: match rest {
                    Some(r) => parse_f64("radius", r)?,
                    None => 1.0,
                },
                samples,
            },
            "ellipse" => {
                let rest = rest.ok_or_else(|| CliError::Parse("ellipse needs semi-axes, e.g. ellipse:2,1".into()))?;
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| CliError::Parse(format!("ellipse: expected `A,B`, got {rest:?}")))?;
                ShapeSpec::Ellipse {
                    a: parse_f64("a", a)?,
                    b: parse_f64("b", b)?,
                    samples,
                }
            }
            "polygon" => {
                let rest = rest.ok_or_else(|| CliError::Parse("polygon needs vertices, e.g. polygon:0,0;1,0;0,1".into()))?;
                let vertices = rest
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .enumerate()
                    .map(|(i, pair)| {
                        let (x, y) = pair.split_once(',').ok_or_else(|| {
                            CliError::Parse(format!("vertex {i}: expected `x,y`, got {pair:?}"))
                        })?;
                        Ok([parse_f64(&format!("vertices[{i}].x"), x)?, parse_f64(&format!("vertices[{i}].y"), y)?])
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                ShapeSpec::Polygon { vertices }
            }
            other => {
                return Err(CliError::Parse(format!(
                    "unknown shape kind {other:?}; expected ngon, disk, ellipse, polygon or a JSON object"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: ShapeSpec = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("shape JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |field: &str, msg: String| Err(CliError::Parse(format!("field `{field}`: {msg}")));
        match *self {
            ShapeSpec::Polygon { ref vertices } if vertices.len() < 3 => {
                bad("vertices", format!("need at least 3 vertices, got {}", vertices.len()))
            }
            ShapeSpec::RegularNgon { n, .. } if n < 3 => bad("n", format!("must be >= 3, got {n}")),
            ShapeSpec::RegularNgon { circumradius, .. } if !(circumradius > 0.0) => {
                bad("circumradius", format!("must be > 0, got {circumradius}"))
            }
            ShapeSpec::Ellipse { a, .. } if !(a > 0.0) => bad("a", format!("must be > 0, got {a}")),
            ShapeSpec::Ellipse { b, .. } if !(b > 0.0) => bad("b", format!("must be > 0, got {b}")),
            ShapeSpec::Disk { radius, .. } if !(radius > 0.0) => bad("radius", format!("must be > 0, got {radius}")),
            ShapeSpec::Ellipse { samples, .. } | ShapeSpec::Disk { samples, .. } if samples < 32 => {
                bad("samples", format!("must be >= 32, got {samples}"))
            }
            _ => Ok(()),
        }
    }

    pub fn to_body(&self) -> Result<ConvexBody, CliError> {
        self.validate()?;
        let body = match *self {
            ShapeSpec::Polygon { ref vertices } => {
                let pts: Vec<Point2> = vertices.iter().map(|&v| v.into()).collect();
                ConvexBody::polygon(&pts)
            }
            ShapeSpec::RegularNgon { n, circumradius } => ConvexBody::regular_ngon(n, circumradius),
            ShapeSpec::Ellipse { a, b, samples } => ConvexBody::ellipse(a, b, samples),
            ShapeSpec::Disk { radius, samples } => ConvexBody::disk(radius, samples),
        };
        body.map_err(|e| CliError::Parse(format!("shape does not define a convex body: {e}")))
    }
}
