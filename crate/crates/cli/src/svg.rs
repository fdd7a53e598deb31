//! SVG 1.1 figures of the construction, optionally zoomed on a point.
//!
//! Coordinates are transformed to canvas pixels in full precision before
//! rounding, so deep zooms keep their detail.

use std::collections::BTreeMap;
use std::fmt::Write;

use unicover::cover::{ConstructionReport, HexPair, LABELS};
use unicover::geom::{Element, Orientation, Point};
use unicover::{PrecisionContext, Scalar};

use crate::report::all_points;

pub const CANVAS: i64 = 800;
/// World width shown across the canvas at scale 1.
const EXTENT: &str = "1.25";
pub const ZOOM_NAMES: [&str; 13] = ["O", "N", "L", "M", "W", "X", "Y", "A1", "B1", "C1", "D1", "E1", "F1"];

pub struct Figure<'a> {
    report: &'a ConstructionReport,
    hexagons: &'a HexPair,
    points: BTreeMap<String, Point>,
}

struct View {
    center: Point,
    px_per_unit: Scalar,
    half: Scalar,
}

impl View {
    fn xy(&self, p: &Point) -> (f64, f64) {
        let d = p.sub(&self.center);
        let x = &self.half + &(&d.x * &self.px_per_unit);
        let y = &self.half - &(&d.y * &self.px_per_unit);
        (x.to_f64(), y.to_f64())
    }

    fn pair(&self, p: &Point) -> String {
        let (x, y) = self.xy(p);
        format!("{x:.3},{y:.3}")
    }

    fn polygon(&self, pts: &[Point]) -> String {
        pts.iter().map(|p| self.pair(p)).collect::<Vec<_>>().join(" ")
    }
}

impl<'a> Figure<'a> {
    pub fn new(report: &'a ConstructionReport, hexagons: &'a HexPair) -> Self {
        Self {
            report,
            hexagons,
            points: all_points(report, hexagons),
        }
    }

    /// A named point, or literal coordinates `x,y`.
    pub fn resolve(&self, zoom: &str, ctx: PrecisionContext) -> Result<Point, String> {
        if ZOOM_NAMES.contains(&zoom) {
            return Ok(self.points[zoom].clone());
        }
        if let Some((x, y)) = zoom.split_once(',') {
            if let (Ok(x), Ok(y)) = (ctx.parse(x.trim()), ctx.parse(y.trim())) {
                return Ok(Point::new(x, y));
            }
        }
        Err(format!(
            "unknown zoom point {zoom:?}; valid names are {} (or coordinates x,y)",
            ZOOM_NAMES.join(", ")
        ))
    }

    pub fn render(&self, sigma_deg: &str, center: &Point, scale: &Scalar) -> String {
        let ctx = center.x.context();
        let extent = ctx.parse(EXTENT).expect("literal");
        let view = View {
            center: center.clone(),
            px_per_unit: &(&ctx.int(CANVAS) / &extent) * scale,
            half: ctx.int(CANVAS / 2),
        };
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
        );
        let _ = writeln!(s, "<title>Universal covering, σ = {sigma_deg}°</title>");
        let _ = writeln!(
            s,
            "<desc>area {} at scale {scale} about ({}, {})</desc>",
            self.report.area.to_scientific(20),
            center.x.to_scientific(20),
            center.y.to_scientific(20)
        );
        let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

        let _ = writeln!(s, r##"<g id="triangles" fill="#f4c7c3" stroke="#c0504d" stroke-width="0.5">"##);
        for (k, tri) in self.report.points.triangles.iter().enumerate() {
            let _ = writeln!(s, r#"<polygon id="triangle-{}" points="{}"/>"#, LABELS[k], view.polygon(tri));
        }
        let _ = writeln!(s, "</g>");

        let _ = writeln!(
            s,
            r##"<polygon id="hexagon" points="{}" fill="none" stroke="#555555" stroke-width="1"/>"##,
            view.polygon(&self.hexagons.hexagon)
        );
        let _ = writeln!(
            s,
            r##"<polygon id="hexagon-rotated" points="{}" fill="none" stroke="#888888" stroke-width="1" stroke-dasharray="6,4"/>"##,
            view.polygon(&self.hexagons.rotated)
        );

        let _ = writeln!(
            s,
            r##"<path id="boundary" d="{}" fill="#4f81bd" fill-opacity="0.15" stroke="#1f4e79" stroke-width="1.5"/>"##,
            self.boundary_path(&view)
        );

        let _ = writeln!(s, r##"<g id="points" font-family="sans-serif" font-size="12" fill="#000000">"##);
        for (name, p) in &self.points {
            if name.ends_with('\'') {
                continue;
            }
            let (x, y) = view.xy(p);
            let _ = writeln!(
                s,
                r#"<circle id="point-{name}" cx="{x:.3}" cy="{y:.3}" r="3"/><text x="{:.3}" y="{:.3}">{name}</text>"#,
                x + 5.0,
                y - 5.0
            );
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, "</svg>");
        s
    }

    fn boundary_path(&self, view: &View) -> String {
        let elements = self.report.boundary.elements();
        let mut d = format!("M {}", view.pair(elements[0].start()));
        for e in elements {
            match e {
                Element::Line(l) => {
                    let _ = write!(d, " L {}", view.pair(&l.end));
                }
                Element::Arc(a) => {
                    let r = (&a.radius * &view.px_per_unit).to_f64();
                    let large = u8::from(a.sweep().abs() > a.radius.context().pi());
                    // the y axis flips, so counterclockwise becomes SVG's positive sweep
                    let sweep = u8::from(a.orientation == Orientation::Counterclockwise);
                    let _ = write!(d, " A {r:.3} {r:.3} 0 {large} {sweep} {}", view.pair(&a.end));
                }
            }
        }
        d.push_str(" Z");
        d
    }
}
