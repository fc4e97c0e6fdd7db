//! Minimal SVG 1.1 figures: a body outline plus labeled overlays.

use std::fmt::Write as _;

use crate::geometry::{BoundingBox, ConvexBody, Point2, Square, TruncatedSector};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const LEGEND_ROW: f64 = 18.0;

enum Shape {
    Polygon(Vec<Point2>),
    Dot(Point2),
}

struct Layer {
    shape: Shape,
    color: &'static str,
    dashed: bool,
    label: String,
}

/// Builder for one drawing. Coordinates are in body space; the y axis points
/// up in the rendered image.
pub struct Figure {
    body: Vec<Point2>,
    layers: Vec<Layer>,
    title: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

impl Figure {
    pub fn new(body: &ConvexBody, title: impl Into<String>) -> Self {
        Figure {
            body: body.vertices().to_vec(),
            layers: Vec::new(),
            title: title.into(),
        }
    }

    pub fn square(mut self, sq: &Square, color: &'static str, dashed: bool, label: impl Into<String>) -> Self {
        self.layers.push(Layer {
            shape: Shape::Polygon(sq.vertices().to_vec()),
            color,
            dashed,
            label: label.into(),
        });
        self
    }

    pub fn sector(mut self, sec: &TruncatedSector, color: &'static str, label: impl Into<String>) -> Self {
        let steps = 32;
        let mut pts = vec![sec.apex];
        pts.extend((0..=steps).map(|k| sec.point(1.0, sec.theta.radians() * k as f64 / steps as f64)));
        self.layers.push(Layer {
            shape: Shape::Polygon(pts),
            color,
            dashed: false,
            label: label.into(),
        });
        self
    }

    pub fn point(mut self, p: Point2, color: &'static str, label: impl Into<String>) -> Self {
        self.layers.push(Layer {
            shape: Shape::Dot(p),
            color,
            dashed: false,
            label: label.into(),
        });
        self
    }

    fn extent(&self) -> BoundingBox {
        let mut all: Vec<Point2> = self.body.clone();
        for l in &self.layers {
            match &l.shape {
                Shape::Polygon(p) => all.extend(p),
                Shape::Dot(p) => all.push(*p),
            }
        }
        let mut bb = BoundingBox {
            min: all[0],
            max: all[0],
        };
        for p in &all {
            bb.min = Point2::new(bb.min.x.min(p.x), bb.min.y.min(p.y));
            bb.max = Point2::new(bb.max.x.max(p.x), bb.max.y.max(p.y));
        }
        bb
    }

    pub fn render(&self) -> String {
        let bb = self.extent();
        let scale = (SIZE - 2.0 * MARGIN) / bb.width().max(bb.height()).max(1e-300);
        let map = |p: Point2| ((p.x - bb.min.x) * scale + MARGIN, (bb.max.y - p.y) * scale + MARGIN);
        let path = |pts: &[Point2]| {
            let mut d = String::new();
            for (i, &p) in pts.iter().enumerate() {
                let (x, y) = map(p);
                let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
            }
            d.push('Z');
            d
        };
        let legend_h = LEGEND_ROW * (self.layers.len() + 1) as f64 + 8.0;
        let height = SIZE + legend_h;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">"#
        );
        let _ = writeln!(s, "  <title>{}</title>", escape(&self.title));
        let _ = writeln!(s, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##);
        let _ = writeln!(
            s,
            r##"  <path id="body" d="{}" fill="#eef3fb" stroke="#1f3b73" stroke-width="1.5"/>"##,
            path(&self.body)
        );
        for (i, l) in self.layers.iter().enumerate() {
            let dash = if l.dashed { r#" stroke-dasharray="5,3""# } else { "" };
            match &l.shape {
                Shape::Polygon(p) => {
                    let _ = writeln!(
                        s,
                        r#"  <path id="layer{i}" d="{}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
                        path(p),
                        l.color
                    );
                    for &v in p {
                        let (x, y) = map(v);
                        let _ = writeln!(s, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{}"/>"#, l.color);
                    }
                }
                Shape::Dot(p) => {
                    let (x, y) = map(*p);
                    let _ = writeln!(s, r#"  <circle id="layer{i}" cx="{x:.3}" cy="{y:.3}" r="4" fill="{}"/>"#, l.color);
                }
            }
        }
        let _ = writeln!(s, r#"  <g id="legend" font-family="sans-serif" font-size="12">"#);
        let mut y = SIZE + LEGEND_ROW;
        let _ = writeln!(
            s,
            r##"    <rect x="{MARGIN}" y="{:.1}" width="12" height="12" fill="#eef3fb" stroke="#1f3b73"/><text x="{:.1}" y="{:.1}">body</text>"##,
            y - 10.0,
            MARGIN + 18.0,
            y
        );
        for l in &self.layers {
            y += LEGEND_ROW;
            let _ = writeln!(
                s,
                r#"    <rect x="{MARGIN}" y="{:.1}" width="12" height="12" fill="{}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                y - 10.0,
                l.color,
                MARGIN + 18.0,
                y,
                escape(&l.label)
            );
        }
        let _ = writeln!(s, "  </g>");
        s.push_str("</svg>\n");
        s
    }
}
