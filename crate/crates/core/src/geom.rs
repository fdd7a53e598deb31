//! Planar primitives over [`Scalar`] and the few exact constructions the
//! covering needs.
//!
//! Tolerances scale with the working precision as `10^(k − digits)`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{PrecisionContext, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("malformed boundary: {0}")]
    Malformed(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Self { x, y }
    }

    pub fn origin(ctx: PrecisionContext) -> Self {
        Self::new(ctx.zero(), ctx.zero())
    }

    /// `r·(cos a, sin a)`.
    pub fn polar(r: &Scalar, angle: &Scalar) -> Self {
        Self::new(r * &angle.cos(), r * &angle.sin())
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &Scalar) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point) -> Scalar {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    pub fn cross(&self, o: &Point) -> Scalar {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn norm(&self) -> Scalar {
        self.norm_sq().sqrt().expect("sum of squares is nonnegative")
    }

    pub fn dist(&self, o: &Point) -> Scalar {
        self.sub(o).norm()
    }

    /// Rotated a quarter turn counterclockwise.
    pub fn perp(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        let two = Scalar::from_int(2, self.x.digits());
        Point::new(&(&self.x + &o.x) / &two, &(&self.y + &o.y) / &two)
    }

    /// Rotation about the origin by the angle with the given cosine and sine.
    pub fn rotate_cs(&self, c: &Scalar, s: &Scalar) -> Point {
        Point::new(
            &(&self.x * c) - &(&self.y * s),
            &(&self.x * s) + &(&self.y * c),
        )
    }

    pub fn rotate(&self, angle: &Scalar) -> Point {
        self.rotate_cs(&angle.cos(), &angle.sin())
    }

    /// Mirror image across the vertical axis.
    pub fn reflect_x(&self) -> Point {
        Point::new(-&self.x, self.y.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// Ascending y, then ascending x.
    pub fn cmp_yx(&self, o: &Point) -> Ordering {
        self.y.cmp(&o.y).then_with(|| self.x.cmp(&o.x))
    }
}

/// The candidate closest to `reference` (first one on ties).
pub fn nearest<'a>(candidates: &'a [Point], reference: &Point) -> Option<&'a Point> {
    candidates
        .iter()
        .map(|p| (p.sub(reference).norm_sq(), p))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, p)| p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: Scalar,
}

impl Circle {
    pub fn new(center: Point, radius: Scalar) -> Result<Self, GeomError> {
        if !radius.is_positive() {
            return Err(GeomError::Domain(format!("circle radius {radius} is not positive")));
        }
        Ok(Self { center, radius })
    }

    /// `|p − c|² − r²`.
    pub fn power(&self, p: &Point) -> Scalar {
        &p.sub(&self.center).norm_sq() - &self.radius.square()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSegment {
    pub start: Point,
    pub end: Point,
}

impl LineSegment {
    pub fn new(start: Point, end: Point) -> Result<Self, GeomError> {
        if start == end {
            return Err(GeomError::Degenerate(format!(
                "segment endpoints coincide at ({}, {})",
                start.x, start.y
            )));
        }
        Ok(Self { start, end })
    }

    pub fn direction(&self) -> Point {
        self.end.sub(&self.start)
    }

    pub fn length(&self) -> Scalar {
        self.direction().norm()
    }

    /// Signed distance of `p` from the carrier line, positive on the left.
    pub fn side(&self, p: &Point) -> Scalar {
        let d = self.direction();
        &d.cross(&p.sub(&self.start)) / &d.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSegment {
    pub center: Point,
    pub radius: Scalar,
    pub start: Point,
    pub end: Point,
    pub orientation: Orientation,
}

impl ArcSegment {
    /// Checks both endpoints against the radius within `10^(5−digits)`.
    pub fn new(
        center: Point,
        radius: Scalar,
        start: Point,
        end: Point,
        orientation: Orientation,
        ctx: PrecisionContext,
    ) -> Result<Self, GeomError> {
        if !radius.is_positive() {
            return Err(GeomError::Domain(format!("arc radius {radius} is not positive")));
        }
        let tol = &ctx.eps(5) * &radius.clone().max(ctx.one());
        for (name, p) in [("start", &start), ("end", &end)] {
            let off = (&p.dist(&center) - &radius).abs();
            if off > tol {
                return Err(GeomError::Malformed(format!(
                    "arc {name} point is {off} off its circle"
                )));
            }
        }
        if start == end {
            return Err(GeomError::Degenerate("arc endpoints coincide".to_owned()));
        }
        Ok(Self {
            center,
            radius,
            start,
            end,
            orientation,
        })
    }

    /// Signed swept angle: in `(0, 2π)` counterclockwise, `(−2π, 0)` clockwise.
    pub fn sweep(&self) -> Scalar {
        let u = self.start.sub(&self.center);
        let v = self.end.sub(&self.center);
        let a = Scalar::atan2(&u.cross(&v), &u.dot(&v)).expect("arc endpoints differ from center");
        let two_pi = &self.radius.context().pi() * &Scalar::from_int(2, a.digits());
        match self.orientation {
            Orientation::Counterclockwise if !a.is_positive() => &a + &two_pi,
            Orientation::Clockwise if !a.is_negative() => &a - &two_pi,
            _ => a,
        }
    }

    /// Polar angle of the start point about the center.
    pub fn start_angle(&self) -> Scalar {
        let u = self.start.sub(&self.center);
        Scalar::atan2(&u.y, &u.x).expect("arc start differs from center")
    }

    pub fn chord_length(&self) -> Scalar {
        self.start.dist(&self.end)
    }

    pub fn point_at_angle(&self, angle: &Scalar) -> Point {
        self.center.add(&Point::polar(&self.radius, angle))
    }

    pub fn midpoint(&self) -> Point {
        let half = &self.sweep() / &Scalar::from_int(2, self.radius.digits());
        self.point_at_angle(&(&self.start_angle() + &half))
    }

    /// Unnormalized tangent in the direction of travel at a point of the arc.
    fn tangent_at(&self, p: &Point) -> Point {
        let t = p.sub(&self.center).perp();
        match self.orientation {
            Orientation::Counterclockwise => t,
            Orientation::Clockwise => t.scale(&Scalar::from_int(-1, t.x.digits())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Element {
    Line(LineSegment),
    Arc(ArcSegment),
}

impl Element {
    pub fn start(&self) -> &Point {
        match self {
            Element::Line(l) => &l.start,
            Element::Arc(a) => &a.start,
        }
    }

    pub fn end(&self) -> &Point {
        match self {
            Element::Line(l) => &l.end,
            Element::Arc(a) => &a.end,
        }
    }

    fn start_tangent(&self) -> Point {
        match self {
            Element::Line(l) => l.direction(),
            Element::Arc(a) => a.tangent_at(&a.start),
        }
    }

    fn end_tangent(&self) -> Point {
        match self {
            Element::Line(l) => l.direction(),
            Element::Arc(a) => a.tangent_at(&a.end),
        }
    }

    fn map_points(&self, f: impl Fn(&Point) -> Point) -> Element {
        match self {
            Element::Line(l) => Element::Line(LineSegment {
                start: f(&l.start),
                end: f(&l.end),
            }),
            Element::Arc(a) => Element::Arc(ArcSegment {
                center: f(&a.center),
                radius: a.radius.clone(),
                start: f(&a.start),
                end: f(&a.end),
                orientation: a.orientation,
            }),
        }
    }
}

/// Closed, positively oriented chain of segments and arcs bounding a convex
/// region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringBoundary {
    elements: Vec<Element>,
}

impl CoveringBoundary {
    /// Validates closure and convexity (junction turning `>= −10^(5−digits)`,
    /// total turning `2π`).
    pub fn new(elements: Vec<Element>, ctx: PrecisionContext) -> Result<Self, GeomError> {
        if elements.len() < 2 {
            return Err(GeomError::Malformed(format!(
                "{} elements cannot close a region",
                elements.len()
            )));
        }
        let tol = ctx.eps(5);
        let n = elements.len();
        let mut total = ctx.zero();
        for (i, cur) in elements.iter().enumerate() {
            let next = &elements[(i + 1) % n];
            let gap = cur.end().dist(next.start());
            if gap > tol {
                return Err(GeomError::Malformed(format!(
                    "element {i} ends {gap} away from the start of element {}",
                    (i + 1) % n
                )));
            }
            if let Element::Arc(a) = cur {
                let sweep = a.sweep();
                if sweep.is_negative() {
                    return Err(GeomError::Malformed(format!(
                        "element {i} is a clockwise arc; the region is not convex"
                    )));
                }
                total = &total + &sweep;
            }
            let t0 = cur.end_tangent();
            let t1 = next.start_tangent();
            let turn = Scalar::atan2(&t0.cross(&t1), &t0.dot(&t1))?;
            if turn < -&tol {
                return Err(GeomError::Malformed(format!(
                    "turning {turn} rad at the junction after element {i}"
                )));
            }
            total = &total + &turn;
        }
        let two_pi = &ctx.pi() * &ctx.int(2);
        if (&total - &two_pi).abs() > tol {
            return Err(GeomError::Malformed(format!(
                "total turning {total} rad instead of 2π"
            )));
        }
        Ok(Self { elements })
    }

    /// Closed polygon through the given vertices, in order.
    pub fn polygon(vertices: &[Point], ctx: PrecisionContext) -> Result<Self, GeomError> {
        let n = vertices.len();
        let elements = (0..n)
            .map(|i| LineSegment::new(vertices[i].clone(), vertices[(i + 1) % n].clone()).map(Element::Line))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(elements, ctx)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// The same boundary starting from element `k`.
    pub fn rotated_start(&self, k: usize) -> Self {
        let mut elements = self.elements.clone();
        let n = elements.len().max(1);
        elements.rotate_left(k % n);
        Self { elements }
    }

    /// Image under rotation by `angle` about the origin followed by translation.
    pub fn rigid_motion(&self, angle: &Scalar, shift: &Point) -> Self {
        let (c, s) = (angle.cos(), angle.sin());
        Self {
            elements: self
                .elements
                .iter()
                .map(|e| e.map_points(|p| p.rotate_cs(&c, &s).add(shift)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    /// Two points, ascending y then x.
    Two(Point, Point),
    Tangent(Point),
    None,
}

impl Intersection {
    pub fn points(&self) -> Vec<Point> {
        match self {
            Intersection::Two(a, b) => vec![a.clone(), b.clone()],
            Intersection::Tangent(p) => vec![p.clone()],
            Intersection::None => Vec::new(),
        }
    }
}

fn ordered(a: Point, b: Point) -> Intersection {
    if a.cmp_yx(&b) == Ordering::Greater {
        Intersection::Two(b, a)
    } else {
        Intersection::Two(a, b)
    }
}

pub fn circle_circle_intersection(
    a: &Circle,
    b: &Circle,
    ctx: PrecisionContext,
) -> Result<Intersection, GeomError> {
    let delta = b.center.sub(&a.center);
    let d2 = delta.norm_sq();
    if d2.is_zero() {
        return Err(GeomError::Degenerate(format!(
            "concentric circles about ({}, {})",
            a.center.x, a.center.y
        )));
    }
    let d = d2.sqrt()?;
    let two = ctx.int(2);
    // distance from a's center to the radical line, along the center line
    let along = &(&(&a.radius.square() - &b.radius.square()) + &d2) / &(&two * &d);
    let h2 = &a.radius.square() - &along.square();
    let u = delta.scale(&(&ctx.one() / &d));
    let foot = a.center.add(&u.scale(&along));
    let tangency = &ctx.eps(10) * &a.radius.square();
    if h2.abs() < tangency {
        return Ok(Intersection::Tangent(foot));
    }
    if h2.is_negative() {
        return Ok(Intersection::None);
    }
    let off = u.perp().scale(&h2.sqrt()?);
    Ok(ordered(foot.add(&off), foot.sub(&off)))
}

/// Intersections of a circle with the full carrier line of `line`.
pub fn circle_line_intersection(
    c: &Circle,
    line: &LineSegment,
    ctx: PrecisionContext,
) -> Intersection {
    let dir = line.direction();
    let u = dir.scale(&(&ctx.one() / &dir.norm()));
    let w = line.start.sub(&c.center);
    let b = w.dot(&u);
    let disc = &b.square() - &(&w.norm_sq() - &c.radius.square());
    let foot = line.start.add(&u.scale(&-&b));
    if disc.abs() < &ctx.eps(10) * &c.radius.square() {
        return Intersection::Tangent(foot);
    }
    if disc.is_negative() {
        return Intersection::None;
    }
    let off = u.scale(&disc.sqrt().expect("positive discriminant"));
    ordered(foot.add(&off), foot.sub(&off))
}

/// Unsigned angle between the rays from `at` to `p1` and to `p2`, in `[0, π]`.
pub fn interior_angle(at: &Point, p1: &Point, p2: &Point) -> Result<Scalar, GeomError> {
    let u = p1.sub(at);
    let v = p2.sub(at);
    if u.norm_sq().is_zero() || v.norm_sq().is_zero() {
        return Err(GeomError::Degenerate(format!(
            "zero-length ray at ({}, {})",
            at.x, at.y
        )));
    }
    Ok(Scalar::atan2(&u.cross(&v).abs(), &u.dot(&v))?)
}

/// Area between a chord and its minor arc: `(r²/2)(θ − sin θ)` with
/// `θ = 2·asin(d / 2r)`.
pub fn circular_segment_area(radius: &Scalar, chord: &Scalar) -> Result<Scalar, GeomError> {
    let two = Scalar::from_int(2, radius.digits().max(chord.digits()));
    let diameter = &two * radius;
    if chord.is_negative() || *chord > diameter {
        return Err(GeomError::Domain(format!(
            "chord {chord} does not fit a circle of radius {radius}"
        )));
    }
    let theta = &two * &(chord / &diameter).asin()?;
    Ok(&(&radius.square() / &two) * &theta.x_minus_sin())
}

/// Enclosed area via Green's theorem: shoelace over the element endpoints
/// plus a signed circular-segment term per arc.
pub fn region_area(boundary: &CoveringBoundary) -> Scalar {
    let elements = boundary.elements();
    let digits = elements[0].start().x.digits();
    let two = Scalar::from_int(2, digits);
    let mut twice = Scalar::from_int(0, digits);
    let mut segments = Scalar::from_int(0, digits);
    for e in elements {
        twice = &twice + &e.start().cross(e.end());
        if let Element::Arc(a) = e {
            // odd in the sweep, so clockwise arcs subtract
            segments = &segments + &(&(&a.radius.square() / &two) * &a.sweep().x_minus_sin());
        }
    }
    &(&twice / &two) + &segments
}
