//! The slanted-hexagon covering.
//!
//! Frame: hexagon `H` centered at the origin with inradius 1/2, vertex `A₁`
//! at polar angle 120° and `B₁ … F₁` following clockwise, so side `D₁E₁` is
//! horizontal at the bottom and the axis through its midpoint `M` is
//! vertical. `H′` is `H` rotated counterclockwise by `30° + σ`; the six
//! pieces of `H` outside `H′` are the corner triangles `A … F`. Every
//! construction also accepts a global frame rotation, used to test that
//! nothing depends on the chosen axes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    circle_circle_intersection, circle_line_intersection, interior_angle, nearest, region_area,
    ArcSegment, Circle, CoveringBoundary, Element, GeomError, Intersection, LineSegment,
    Orientation, Point,
};
use crate::scalar::{PrecisionContext, Scalar, ScalarError};

pub const LABELS: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
/// Indices into the hexagon vertices and corner triangles, clockwise from the top left.
pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;
pub const E: usize = 4;
pub const F: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("slant angle {0} rad is outside [0°, 10°)")]
    SigmaRange(String),
    #[error("degenerate construction at σ = {sigma} rad: {detail}")]
    Degenerate {
        sigma: String,
        detail: String,
        points: Vec<(String, Point)>,
    },
    #[error("construction is not a convex covering: {0}")]
    Malformed(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Hexagon `H`, its rotated copy `H′` and the slant angle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexPair {
    /// `A₁ … F₁`.
    pub hexagon: [Point; 6],
    /// Images of `A₁ … F₁` under the rotation by `30° + σ`.
    pub rotated: [Point; 6],
    pub sigma: Scalar,
    /// Global rotation of the whole figure; zero in the standard frame.
    pub frame: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPoints {
    pub o: Point,
    pub n: Point,
    pub l: Point,
    pub m: Point,
    pub w: Point,
    pub x: Point,
    pub y: Point,
    /// Corner triangles `A … F`: vertex of `H`, then the corner on the side
    /// toward the clockwise neighbour, then the one toward the counterclockwise
    /// neighbour.
    pub triangles: [[Point; 3]; 6],
}

impl NamedPoints {
    pub fn get(&self, name: &str) -> Option<&Point> {
        Some(match name {
            "O" => &self.o,
            "N" => &self.n,
            "L" => &self.l,
            "M" => &self.m,
            "W" => &self.w,
            "X" => &self.x,
            "Y" => &self.y,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub sigma: Scalar,
    pub points: NamedPoints,
    pub boundary: CoveringBoundary,
    pub area: Scalar,
    pub angle_wyl: Scalar,
    pub angle_mwy: Scalar,
    pub wxy_in_bprime: bool,
    pub constraints_ok: bool,
}

fn degrees(ctx: PrecisionContext, d: i64) -> Scalar {
    ctx.int(d).to_radians()
}

/// Polar angle of vertex `k` of `H` in the standard frame.
fn vertex_angle(ctx: PrecisionContext, k: usize) -> Scalar {
    degrees(ctx, 120 - 60 * k as i64)
}

/// Intersection of the lines `x·n(α) = 1/2` and `x·n(β) = 1/2`.
fn tangent_lines_meet(alpha: &Scalar, beta: &Scalar, ctx: PrecisionContext) -> Point {
    let (ca, sa) = (alpha.cos(), alpha.sin());
    let (cb, sb) = (beta.cos(), beta.sin());
    let two_det = &ctx.int(2) * &(&(&ca * &sb) - &(&sa * &cb));
    Point::new(&(&sb - &sa) / &two_det, &(&ca - &cb) / &two_det)
}

/// Mirror image across the line through the origin and `axis`.
fn reflect_across(p: &Point, axis: &Point) -> Point {
    let ctx = p.x.context();
    let k = &(&ctx.int(2) * &p.dot(axis)) / &axis.norm_sq();
    axis.scale(&k).sub(p)
}

fn sigma_bounds_check(sigma: &Scalar, ctx: PrecisionContext) -> Result<(), CoverError> {
    if sigma.is_negative() || *sigma >= degrees(ctx, 10) {
        return Err(CoverError::SigmaRange(sigma.to_string()));
    }
    Ok(())
}

pub fn build_hexagons(sigma: &Scalar, ctx: PrecisionContext) -> Result<HexPair, CoverError> {
    build_hexagons_in_frame(sigma, &ctx.zero(), ctx)
}

pub fn build_hexagons_in_frame(
    sigma: &Scalar,
    frame: &Scalar,
    ctx: PrecisionContext,
) -> Result<HexPair, CoverError> {
    sigma_bounds_check(sigma, ctx)?;
    let sigma = sigma.with_digits(ctx.digits());
    let frame = frame.with_digits(ctx.digits());
    let r = &ctx.one() / &ctx.int(3).sqrt()?;
    let turn = &degrees(ctx, 30) + &sigma;
    let hexagon: [Point; 6] =
        std::array::from_fn(|k| Point::polar(&r, &(&vertex_angle(ctx, k) + &frame)));
    let rotated: [Point; 6] = std::array::from_fn(|k| hexagon[k].rotate(&turn));
    Ok(HexPair {
        hexagon,
        rotated,
        sigma,
        frame,
    })
}

impl HexPair {
    fn ctx(&self) -> PrecisionContext {
        self.sigma.context()
    }

    fn normal(&self, k: usize, offset_deg: i64) -> Scalar {
        let ctx = self.ctx();
        &(&vertex_angle(ctx, k) + &degrees(ctx, offset_deg)) + &self.frame
    }

    /// Corner triangle `k`: its vertex of `H`, the corner on the side toward
    /// the clockwise neighbour, the corner on the side toward the
    /// counterclockwise neighbour.
    pub fn triangle(&self, k: usize) -> [Point; 3] {
        let ctx = self.ctx();
        let cut = &self.normal(k, 0) + &self.sigma;
        [
            self.hexagon[k].clone(),
            tangent_lines_meet(&cut, &self.normal(k, -30), ctx),
            tangent_lines_meet(&cut, &self.normal(k, 30), ctx),
        ]
    }

    pub fn triangles(&self) -> [[Point; 3]; 6] {
        std::array::from_fn(|k| self.triangle(k))
    }

    /// `H ∩ H′` as a counterclockwise 12-gon.
    pub fn intersection_polygon(&self) -> Vec<Point> {
        [A, F, E, D, C, B]
            .iter()
            .flat_map(|&k| {
                let [_, cw, ccw] = self.triangle(k);
                [cw, ccw]
            })
            .collect()
    }

    /// Midpoint of side `D₁E₁`.
    pub fn m(&self) -> Point {
        self.hexagon[D].midpoint(&self.hexagon[E])
    }

    /// Triangle `B` mirrored across the axis through `M` and the center.
    pub fn b_prime(&self) -> [Point; 3] {
        let axis = self.m();
        self.triangle(B).map(|p| reflect_across(&p, &axis))
    }
}

pub fn locate_points(hp: &HexPair) -> Result<NamedPoints, CoverError> {
    let ctx = hp.ctx();
    if !hp.sigma.is_positive() {
        return Err(degenerate(hp, "σ = 0: the slant points coincide with dodecagon vertices", vec![]));
    }
    let triangles = hp.triangles();
    let m = hp.m();
    let o = triangles[C][1].clone();
    let n = triangles[E][2].clone();
    // corner of F on side E₁F₁, mirrored onto side C₁D₁
    let l = reflect_across(&triangles[F][2], &m);
    let a1 = &hp.hexagon[A];
    let unit = |c: &Point| Circle::new(c.clone(), ctx.one());
    let meet = |p: &Point, q: &Point, name: &str| -> Result<Point, CoverError> {
        let hits = circle_circle_intersection(&unit(p)?, &unit(q)?, ctx)?;
        match hits {
            Intersection::Two(..) => Ok(nearest(&hits.points(), a1).expect("two points").clone()),
            _ => Err(degenerate(hp, &format!("unit circles defining {name} do not cross"), vec![
                ("first center".to_owned(), p.clone()),
                ("second center".to_owned(), q.clone()),
            ])),
        }
    };
    let x = meet(&o, &n, "X")?;
    let w = meet(&o, &m, "W")?;
    let y = meet(&n, &l, "Y")?;
    let tol = ctx.eps(5);
    for (a, b, pa, pb) in [("W", "X", &w, &x), ("X", "Y", &x, &y), ("W", "Y", &w, &y)] {
        if pa.dist(pb) <= tol {
            return Err(degenerate(hp, &format!("{a} and {b} coincide"), vec![
                (a.to_owned(), pa.clone()),
                (b.to_owned(), pb.clone()),
            ]));
        }
    }
    Ok(NamedPoints {
        o,
        n,
        l,
        m,
        w,
        x,
        y,
        triangles,
    })
}

fn degenerate(hp: &HexPair, detail: &str, points: Vec<(String, Point)>) -> CoverError {
    CoverError::Degenerate {
        sigma: hp.sigma.to_string(),
        detail: detail.to_owned(),
        points,
    }
}

/// Where the unit circle about `center` meets the carrier of `edge`, taking
/// the solution inside the edge's span.
fn arc_meets_edge(
    center: &Point,
    edge: &LineSegment,
    ctx: PrecisionContext,
) -> Result<Point, CoverError> {
    let hits = circle_line_intersection(&Circle::new(center.clone(), ctx.one())?, edge, ctx);
    let dir = edge.direction();
    let len2 = dir.norm_sq();
    let tol = ctx.eps(5);
    hits.points()
        .into_iter()
        .find(|p| {
            let t = p.sub(&edge.start).dot(&dir);
            t >= -&tol && t <= &len2 + &tol
        })
        .ok_or_else(|| {
            CoverError::Malformed(format!(
                "unit arc about ({}, {}) misses its covering edge",
                center.x, center.y
            ))
        })
}

pub fn assemble_boundary(hp: &HexPair, np: &NamedPoints) -> Result<CoveringBoundary, CoverError> {
    let ctx = hp.ctx();
    let h = &hp.hexagon;
    let tri = &np.triangles;
    let c_on_bc = tri[C][2].clone();
    let e_on_ef = tri[E][1].clone();
    let top = LineSegment::new(h[B].clone(), h[A].clone())?;
    let upper_left = LineSegment::new(h[A].clone(), h[F].clone())?;
    let t_n = arc_meets_edge(&np.n, &top, ctx)?;
    let t_o = arc_meets_edge(&np.o, &upper_left, ctx)?;
    let seg = |a: &Point, b: &Point| -> Result<Element, CoverError> {
        Ok(Element::Line(LineSegment::new(a.clone(), b.clone())?))
    };
    let arc = |center: &Point, a: &Point, b: &Point| -> Result<Element, CoverError> {
        Ok(Element::Arc(ArcSegment::new(
            center.clone(),
            ctx.one(),
            a.clone(),
            b.clone(),
            Orientation::Counterclockwise,
            ctx,
        )?))
    };
    let elements = vec![
        seg(&np.o, &c_on_bc)?,
        seg(&c_on_bc, &h[B])?,
        seg(&h[B], &t_n)?,
        arc(&np.n, &t_n, &np.y)?,
        seg(&np.y, &np.w)?,
        arc(&np.o, &np.w, &t_o)?,
        seg(&t_o, &h[F])?,
        seg(&h[F], &e_on_ef)?,
        seg(&e_on_ef, &np.n)?,
        seg(&np.n, &h[D])?,
        seg(&h[D], &np.o)?,
    ];
    CoveringBoundary::new(elements, ctx).map_err(|e| match e {
        GeomError::Malformed(msg) => CoverError::Malformed(msg),
        other => CoverError::Geom(other),
    })
}

/// Whether the region `WXY` (bounded by the arc about `O` from `W` to `X`,
/// the arc about `N` from `X` to `Y` and the chord `YW`) lies in `B′`.
///
/// `B′` is an intersection of three half-planes. Over a convex region
/// bounded by outward-bulging arcs, a linear functional peaks either at a
/// vertex or at the arc point whose outward normal matches the functional's
/// direction, which exists only when that direction falls inside the arc's
/// angular span. Testing exactly those candidates decides containment.
pub fn check_case1_containment(np: &NamedPoints, hp: &HexPair) -> bool {
    let ctx = hp.ctx();
    let tri = hp.b_prime();
    let orient = (tri[1].sub(&tri[0])).cross(&tri[2].sub(&tri[0]));
    let arcs = [(&np.o, &np.w, &np.x), (&np.n, &np.x, &np.y)];
    (0..3).all(|i| {
        let (p, q) = (&tri[i], &tri[(i + 1) % 3]);
        let edge = q.sub(p);
        // outward normal for either winding of the triangle
        let normal = if orient.is_positive() {
            Point::new(edge.y.clone(), -&edge.x)
        } else {
            Point::new(-&edge.y, edge.x.clone())
        };
        let unit = normal.scale(&(&ctx.one() / &normal.norm()));
        let limit = unit.dot(p);
        let vertices_ok = [&np.w, &np.x, &np.y].iter().all(|v| unit.dot(v) <= limit);
        let arcs_ok = arcs.iter().all(|(center, a, b)| {
            let u = a.sub(center);
            let v = b.sub(center);
            // direction within the cone of the minor arc from u to v
            let turn = u.cross(&v);
            let same = |s: Scalar| if turn.is_negative() { !s.is_positive() } else { !s.is_negative() };
            let in_span = same(u.cross(&unit)) && same(unit.cross(&v)) && unit.dot(&u.add(&v)).is_positive();
            !in_span || &unit.dot(center) + &ctx.one() <= limit
        });
        vertices_ok && arcs_ok
    })
}

pub fn construct(sigma: &Scalar, ctx: PrecisionContext) -> Result<ConstructionReport, CoverError> {
    construct_in_frame(sigma, &ctx.zero(), ctx)
}

pub fn construct_in_frame(
    sigma: &Scalar,
    frame: &Scalar,
    ctx: PrecisionContext,
) -> Result<ConstructionReport, CoverError> {
    let hp = build_hexagons_in_frame(sigma, frame, ctx)?;
    let points = locate_points(&hp)?;
    let boundary = assemble_boundary(&hp, &points)?;
    let area = region_area(&boundary);
    let angle_wyl = interior_angle(&points.y, &points.w, &points.l)?;
    let angle_mwy = interior_angle(&points.w, &points.m, &points.y)?;
    let wxy_in_bprime = check_case1_containment(&points, &hp);
    let right = &ctx.pi() / &ctx.int(2);
    let constraints_ok = angle_wyl >= right && angle_mwy >= right && wxy_in_bprime;
    Ok(ConstructionReport {
        sigma: hp.sigma,
        points,
        boundary,
        area,
        angle_wyl,
        angle_mwy,
        wxy_in_bprime,
        constraints_ok,
    })
}
