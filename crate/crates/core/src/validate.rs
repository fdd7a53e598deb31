//! Falsification harness: constant-width curves placed in the covering by the
//! three-case strategy, then checked for containment.
//!
//! Everything here runs in `f64`. The covering boundary is rounded once from
//! its [`Scalar`](crate::Scalar) construction; containment margins are far
//! above double-precision noise, and violations are reported as signed
//! distances rather than booleans.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::ConstructionReport;
use crate::geom::Element;

/// Signed distance above which a boundary sample counts as outside.
pub const CONTAINMENT_TOLERANCE: f64 = 1e-10;
/// Penetration depth above which a curve counts as meeting a corner triangle.
pub const TRIANGLE_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 12_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidateError {
    #[error("invalid curve parameters: {0}")]
    Parameter(String),
    #[error("generated curve fails its self-check: {0}")]
    Generator(String),
    #[error("covering report is unusable: {0}")]
    Report(String),
}

type V2 = [f64; 2];

fn add(a: V2, b: V2) -> V2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: V2, b: V2) -> V2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale(a: V2, k: f64) -> V2 {
    [a[0] * k, a[1] * k]
}

fn dot(a: V2, b: V2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross(a: V2, b: V2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm(a: V2) -> f64 {
    a[0].hypot(a[1])
}

fn unit(phi: f64) -> V2 {
    [phi.cos(), phi.sin()]
}

fn rotate(p: V2, angle: f64) -> V2 {
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    Disk,
    Reuleaux { n: u32 },
    PerturbedReuleaux { n: u32, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    Corner(V2),
    Arc { center: V2, radius: f64 },
}

/// A curve of constant width 1, parametrized by outward normal angle.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthOneCurve {
    kind: CurveKind,
    /// Normal-angle breakpoints from 0 to 2π, one more than `pieces`.
    breaks: Vec<f64>,
    pieces: Vec<Piece>,
}

impl WidthOneCurve {
    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Boundary point whose outward normal has angle `phi`.
    pub fn point(&self, phi: f64) -> V2 {
        let t = phi.rem_euclid(TAU);
        let i = self
            .breaks
            .partition_point(|&b| b <= t)
            .clamp(1, self.pieces.len())
            - 1;
        match self.pieces[i] {
            Piece::Corner(p) => p,
            Piece::Arc { center, radius } => add(center, scale(unit(t), radius)),
        }
    }

    /// Support function `h(φ) = max_{p} p·u(φ)`.
    pub fn support(&self, phi: f64) -> f64 {
        dot(self.point(phi), unit(phi))
    }

    /// Corners of a Reuleaux polygon; empty for the disk.
    pub fn corners(&self) -> Vec<V2> {
        self.pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Corner(v) => Some(*v),
                Piece::Arc { .. } => None,
            })
            .collect()
    }

    /// `h(φ) + h(φ + π) = 1` at 360 angles, to 1e-12.
    pub fn check_constant_width(&self) -> Result<(), ValidateError> {
        for i in 0..360 {
            let phi = (i as f64).to_radians();
            let w = self.support(phi) + self.support(phi + PI);
            if (w - 1.0).abs() > 1e-12 {
                return Err(ValidateError::Generator(format!(
                    "{:?} has width {w} at {i}°",
                    self.kind
                )));
            }
        }
        Ok(())
    }

    /// Build from switching angles `0 = φ₀ < … < φ_n = π`: arcs of radius 1
    /// on even intervals of `[0, π]`, corners on odd ones, complemented on
    /// `[π, 2π]`.
    fn from_switches(kind: CurveKind, switches: &[f64]) -> Result<Self, ValidateError> {
        let n = switches.len() - 1;
        let mut breaks: Vec<f64> = switches.to_vec();
        breaks.extend(switches[1..].iter().map(|s| s + PI));
        let arc_at = |j: usize| if j < n { j.is_multiple_of(2) } else { (j - n) % 2 == 1 };
        let mut pieces = Vec::with_capacity(2 * n);
        let mut p = [0.0, 0.0];
        for j in 0..2 * n {
            let (a, b) = (breaks[j], breaks[j + 1]);
            if arc_at(j) {
                let center = sub(p, unit(a));
                pieces.push(Piece::Arc { center, radius: 1.0 });
                p = add(center, unit(b));
            } else {
                pieces.push(Piece::Corner(p));
            }
        }
        if norm(p) > 1e-12 {
            return Err(ValidateError::Generator(format!(
                "{kind:?} does not close (gap {})",
                norm(p)
            )));
        }
        let curve = Self {
            kind,
            breaks,
            pieces,
        };
        curve.check_constant_width()?;
        Ok(curve)
    }
}

/// `Σ_j (−1)^j [u(φ_{j+1}) − u(φ_j)]`: the closing gap of a switching pattern.
fn closure_gap(phi: &[f64]) -> V2 {
    phi.windows(2).enumerate().fold([0.0, 0.0], |acc, (j, w)| {
        let d = sub(unit(w[1]), unit(w[0]));
        if j % 2 == 0 {
            add(acc, d)
        } else {
            sub(acc, d)
        }
    })
}

fn perturbed_switches(n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
    let step = PI / n as f64;
    let mut phi: Vec<f64> = (0..=n)
        .map(|j| {
            let jitter = if j == 0 || j == n {
                0.0
            } else {
                rng.gen_range(-0.35..0.35) * step
            };
            j as f64 * step + jitter
        })
        .collect();
    // restore closure by moving two switches roughly a quarter turn apart
    let (j1, j2) = (1, n.div_ceil(2));
    for _ in 0..60 {
        let gap = closure_gap(&phi);
        if norm(gap) < 1e-15 {
            break;
        }
        // ∂gap/∂φ_j = 2·(−1)^(j−1)·u′(φ_j)
        let col = |j: usize| {
            let s = if j % 2 == 1 { 2.0 } else { -2.0 };
            scale([-phi[j].sin(), phi[j].cos()], s)
        };
        let (c1, c2) = (col(j1), col(j2));
        let det = cross(c1, c2);
        if det.abs() < 1e-9 {
            return None;
        }
        phi[j1] -= cross(gap, c2) / det;
        phi[j2] -= cross(c1, gap) / det;
    }
    let min_gap = 0.2 * step;
    let ordered = phi.windows(2).all(|w| w[1] - w[0] > min_gap);
    (ordered && norm(closure_gap(&phi)) < 1e-13).then_some(phi)
}

pub fn make_curve(kind: CurveKind) -> Result<WidthOneCurve, ValidateError> {
    let odd = |n: u32| {
        if n < 3 || n.is_multiple_of(2) {
            Err(ValidateError::Parameter(format!(
                "Reuleaux polygons need an odd number of corners ≥ 3, got {n}"
            )))
        } else {
            Ok(n as usize)
        }
    };
    match kind {
        CurveKind::Disk => Ok(WidthOneCurve {
            kind,
            breaks: vec![0.0, TAU],
            pieces: vec![Piece::Arc {
                center: [0.0, 0.0],
                radius: 0.5,
            }],
        }),
        CurveKind::Reuleaux { n } => {
            let n = odd(n)?;
            let switches: Vec<f64> = (0..=n).map(|j| j as f64 * PI / n as f64).collect();
            WidthOneCurve::from_switches(kind, &switches)
        }
        CurveKind::PerturbedReuleaux { n, seed } => {
            let n = odd(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..1000 {
                if let Some(switches) = perturbed_switches(n, &mut rng) {
                    return WidthOneCurve::from_switches(kind, &switches);
                }
            }
            Err(ValidateError::Generator(format!(
                "no closed perturbation found for {kind:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Edge {
    /// Region on the left of `a → b`.
    Line { a: V2, b: V2 },
    /// Counterclockwise arc from polar angle `start` through `span`.
    Arc {
        center: V2,
        radius: f64,
        start: f64,
        span: f64,
        a: V2,
        b: V2,
    },
}

fn in_sector(p: V2, center: V2, start: f64, span: f64) -> bool {
    let d = sub(p, center);
    (d[1].atan2(d[0]) - start).rem_euclid(TAU) <= span
}

fn segment_distance(p: V2, a: V2, b: V2) -> f64 {
    let d = sub(b, a);
    let t = (dot(sub(p, a), d) / dot(d, d)).clamp(0.0, 1.0);
    norm(sub(p, add(a, scale(d, t))))
}

/// Extra removal applied on top of the covering, for mutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mutation {
    /// Grow region `WXY` by a homothety about `X` that multiplies its area
    /// by `factor`.
    InflateWxy { factor: f64 },
    /// Move the cut of triangle C (`triangle = 2`) or E (`4`) inward, removing
    /// about `factor` times the area of `WXY`.
    DeepenCut { triangle: usize, factor: f64 },
    /// Shrink the unit arc about `O` (`center = 'O'`) or `N` inside its
    /// angular sector, removing about `factor` times the area of `WXY`.
    ShrinkArc { center: char, factor: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Constraint {
    /// Inside where `n·p ≤ offset`.
    HalfPlane { n: V2, offset: f64 },
    /// Inside where `|p − center| ≤ radius`, enforced only within the sector.
    SectorDisk {
        center: V2,
        radius: f64,
        start: f64,
        span: f64,
    },
}

/// The covering in machine floats, with the corner triangles needed by the
/// placement rules.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringRegion {
    edges: Vec<Edge>,
    extra: Vec<Constraint>,
    triangles: [[V2; 3]; 6],
    wxy_area: f64,
    points: NamedF64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct NamedF64 {
    o: V2,
    n: V2,
    w: V2,
    x: V2,
    y: V2,
}

impl CoveringRegion {
    /// Requires a report built in the standard frame (bottom side `D₁E₁`).
    pub fn from_report(report: &ConstructionReport) -> Result<Self, ValidateError> {
        let f = |p: &crate::geom::Point| -> V2 {
            let (x, y) = p.to_f64();
            [x, y]
        };
        let m = f(&report.points.m);
        if m[0].abs() > 1e-12 || (m[1] + 0.5).abs() > 1e-12 {
            return Err(ValidateError::Report(
                "placement needs the standard frame with M = (0, -1/2)".to_owned(),
            ));
        }
        let edges = report
            .boundary
            .elements()
            .iter()
            .map(|e| match e {
                Element::Line(l) => Edge::Line {
                    a: f(&l.start),
                    b: f(&l.end),
                },
                Element::Arc(a) => Edge::Arc {
                    center: f(&a.center),
                    radius: a.radius.to_f64(),
                    start: a.start_angle().to_f64(),
                    span: a.sweep().to_f64(),
                    a: f(&a.start),
                    b: f(&a.end),
                },
            })
            .collect();
        let triangles = report.points.triangles.clone().map(|t| t.map(|p| f(&p)));
        let p = &report.points;
        let points = NamedF64 {
            o: f(&p.o),
            n: f(&p.n),
            w: f(&p.w),
            x: f(&p.x),
            y: f(&p.y),
        };
        let wxy_area = wxy_area(&points);
        Ok(Self {
            edges,
            extra: Vec::new(),
            triangles,
            wxy_area,
            points,
        })
    }

    pub fn wxy_area(&self) -> f64 {
        self.wxy_area
    }

    /// A copy with an additional removal.
    pub fn mutated(&self, mutation: Mutation) -> Self {
        let mut out = self.clone();
        let p = &self.points;
        let extra_area = |factor: f64| factor * self.wxy_area;
        let constraint = match mutation {
            Mutation::InflateWxy { factor } => {
                let k = factor.sqrt();
                let w = add(p.x, scale(sub(p.w, p.x), k));
                let y = add(p.x, scale(sub(p.y, p.x), k));
                let d = sub(y, w);
                let mut n = scale([-d[1], d[0]], 1.0 / norm(d));
                if dot(sub(p.x, w), n) < 0.0 {
                    n = scale(n, -1.0);
                }
                Constraint::HalfPlane {
                    n,
                    offset: dot(n, w),
                }
            }
            Mutation::DeepenCut { triangle, factor } => {
                let [_, c1, c2] = self.triangles[triangle];
                let chord = sub(c2, c1);
                let len = norm(chord);
                let mut n = scale([chord[1], -chord[0]], 1.0 / len);
                // outward: toward the removed vertex
                if dot(sub(self.triangles[triangle][0], c1), n) < 0.0 {
                    n = scale(n, -1.0);
                }
                Constraint::HalfPlane {
                    n,
                    offset: dot(n, c1) - extra_area(factor) / len,
                }
            }
            Mutation::ShrinkArc { center, factor } => {
                let c = if center == 'O' { p.o } else { p.n };
                let (start, span) = self
                    .edges
                    .iter()
                    .find_map(|e| match *e {
                        Edge::Arc {
                            center: ec,
                            start,
                            span,
                            ..
                        } if norm(sub(ec, c)) < 1e-12 => Some((start, span)),
                        _ => None,
                    })
                    .expect("covering has arcs about O and N");
                Constraint::SectorDisk {
                    center: c,
                    radius: 1.0 - extra_area(factor) / span,
                    start,
                    span,
                }
            }
        };
        out.extra.push(constraint);
        out
    }

    /// Positive outside, negative inside; exact Euclidean distance to the
    /// boundary for the unmutated covering.
    pub fn signed_distance(&self, p: V2) -> f64 {
        let mut inside = true;
        let mut dist = f64::INFINITY;
        for e in &self.edges {
            match *e {
                Edge::Line { a, b } => {
                    if cross(sub(b, a), sub(p, a)) < 0.0 {
                        inside = false;
                    }
                    dist = dist.min(segment_distance(p, a, b));
                }
                Edge::Arc {
                    center,
                    radius,
                    start,
                    span,
                    a,
                    b,
                } => {
                    if in_sector(p, center, start, span) {
                        let r = norm(sub(p, center));
                        if r > radius {
                            inside = false;
                        }
                        dist = dist.min((r - radius).abs());
                    } else {
                        dist = dist.min(norm(sub(p, a)).min(norm(sub(p, b))));
                    }
                }
            }
        }
        let base = if inside { -dist } else { dist };
        self.extra.iter().fold(base, |acc, c| {
            let v = match *c {
                Constraint::HalfPlane { n, offset } => dot(n, p) - offset,
                Constraint::SectorDisk {
                    center,
                    radius,
                    start,
                    span,
                } => {
                    if in_sector(p, center, start, span) {
                        norm(sub(p, center)) - radius
                    } else {
                        f64::NEG_INFINITY
                    }
                }
            };
            acc.max(v)
        })
    }

    /// Deepest penetration of `pts` into the interior of corner triangle `k`
    /// (mirrored across the vertical axis when `mirrored`).
    fn triangle_depth(&self, pts: &[V2], k: usize, mirrored: bool) -> f64 {
        let mut t = self.triangles[k];
        if mirrored {
            t = t.map(|q| [-q[0], q[1]]);
        }
        let orient = cross(sub(t[1], t[0]), sub(t[2], t[0])).signum();
        let edges: [(V2, V2); 3] = std::array::from_fn(|i| {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            let d = sub(b, a);
            (a, scale([-d[1], d[0]], orient / norm(d)))
        });
        pts.iter()
            .map(|&q| {
                edges
                    .iter()
                    .map(|&(a, n)| dot(sub(q, a), n))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Area of region `WXY`: the circular segments of the two arcs beyond the
/// triangle `WXY`.
fn wxy_area(p: &NamedF64) -> f64 {
    let tri = 0.5 * cross(sub(p.x, p.w), sub(p.y, p.w)).abs();
    let seg = |a: V2, b: V2| {
        let theta = 2.0 * (norm(sub(a, b)) / 2.0).asin();
        0.5 * (theta - theta.sin())
    };
    tri + seg(p.w, p.x) + seg(p.x, p.y)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: CurveKind,
    /// Start of the 60° window searched for the inscribed rotation.
    pub start_angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementResult {
    pub curve_id: usize,
    pub kind: CurveKind,
    /// Rotation applied to the curve, radians.
    pub rotation: f64,
    pub translation: V2,
    /// Mirrored across the vertical axis after rotation and translation.
    pub reflected: bool,
    pub contained: bool,
    pub max_violation: f64,
    pub case_used: Option<u8>,
}

/// Hexagon side normals used to fix the translation.
const SIDE_NORMALS_DEG: [f64; 3] = [90.0, 210.0, 330.0];

/// Rotation in `[start, start + 60°)` at which the curve touches all six
/// sides of the hexagon at once.
fn inscribed_rotation(curve: &WidthOneCurve, start: f64) -> f64 {
    // sum of supports in three directions 120° apart; the hexagon needs 3/2
    let g = |psi: f64| {
        SIDE_NORMALS_DEG
            .iter()
            .map(|d| curve.support(d.to_radians() - psi))
            .sum::<f64>()
            - 1.5
    };
    let (mut lo, mut hi) = (start, start + PI / 3.0);
    let g_lo = g(lo);
    if g_lo == 0.0 {
        return lo;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == (g_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Translation making the rotated curve touch the sides with normals 90°
/// and 210° (and hence all six).
fn inscribed_translation(curve: &WidthOneCurve, psi: f64) -> V2 {
    let (a, b) = (90f64.to_radians(), 210f64.to_radians());
    let r1 = 0.5 - curve.support(a - psi);
    let r2 = 0.5 - curve.support(b - psi);
    let (n1, n2) = (unit(a), unit(b));
    let det = cross(n1, n2);
    [(r1 * n2[1] - r2 * n1[1]) / det, (n1[0] * r2 - n2[0] * r1) / det]
}

fn world_samples(curve: &WidthOneCurve, psi: f64, t: V2, samples: usize) -> Vec<V2> {
    let base = 30f64.to_radians();
    (0..samples)
        .map(|i| {
            let phi = base + TAU * i as f64 / samples as f64;
            add(rotate(curve.point(phi - psi), psi), t)
        })
        .collect()
}

/// Places the curve by the covering argument and measures containment.
///
/// The curve is rotated until it is inscribed in the hexagon, then turned by
/// a multiple of 60° so that it avoids the removed triangles C and E. If it
/// meets the mirror image of E the first case applies; otherwise if it meets
/// the mirror image of C the second; otherwise the third, reflecting across
/// the vertical axis when its lowest point lies left of `M`.
pub fn place_in_covering(
    curve_id: usize,
    curve: &WidthOneCurve,
    start_angle: f64,
    region: &CoveringRegion,
    samples: usize,
) -> PlacementResult {
    let samples = samples.max(6).div_ceil(6) * 6;
    let psi0 = inscribed_rotation(curve, start_angle);
    let mut chosen = None;
    for k in 0..6 {
        let psi = psi0 + k as f64 * PI / 3.0;
        let t = inscribed_translation(curve, psi);
        let pts = world_samples(curve, psi, t, samples);
        let meets = |tri: usize, mirrored: bool| region.triangle_depth(&pts, tri, mirrored) > TRIANGLE_TOLERANCE;
        if !meets(2, false) && !meets(4, false) {
            let case = if meets(4, true) {
                1
            } else if meets(2, true) {
                2
            } else {
                3
            };
            chosen = Some((psi, t, pts, case));
            break;
        }
    }
    let (psi, t, mut pts, case_used) = match chosen {
        Some((psi, t, pts, case)) => (psi, t, pts, Some(case)),
        None => {
            let t = inscribed_translation(curve, psi0);
            (psi0, t, world_samples(curve, psi0, t, samples), None)
        }
    };
    let mut reflected = false;
    if case_used == Some(3) {
        let lowest = pts
            .iter()
            .min_by(|a, b| a[1].total_cmp(&b[1]))
            .expect("samples are nonempty");
        if lowest[0] < 0.0 {
            reflected = true;
            for q in &mut pts {
                q[0] = -q[0];
            }
        }
    }
    let max_violation = pts
        .par_iter()
        .map(|&q| region.signed_distance(q))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    PlacementResult {
        curve_id,
        kind: curve.kind(),
        rotation: psi,
        translation: t,
        reflected,
        contained: max_violation <= CONTAINMENT_TOLERANCE,
        max_violation,
        case_used,
    }
}

/// `count` curves cycling through disks, regular Reuleaux 3/5/7 and
/// perturbed Reuleaux polygons, with seeded start angles.
pub fn standard_batch(count: usize, seed: u64) -> Vec<CurveSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let kind = match i % 10 {
                0 => CurveKind::Disk,
                1 => CurveKind::Reuleaux { n: 3 },
                2 => CurveKind::Reuleaux { n: 5 },
                3 => CurveKind::Reuleaux { n: 7 },
                r => CurveKind::PerturbedReuleaux {
                    n: [5, 5, 7, 7, 9, 11][r - 4],
                    seed: rng.gen(),
                },
            };
            CurveSpec {
                kind,
                start_angle: rng.gen_range(0.0..TAU),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub curves: usize,
    pub contained: usize,
    pub failures: Vec<PlacementResult>,
    pub worst_violation: Option<f64>,
    /// Placements by case: none, 1, 2, 3.
    pub case_counts: [usize; 4],
}

/// Places every curve (in parallel) and merges results in input order.
pub fn batch(
    specs: &[CurveSpec],
    region: &CoveringRegion,
    samples: usize,
) -> Result<BatchSummary, ValidateError> {
    let results = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let curve = make_curve(spec.kind)?;
            Ok(place_in_covering(i, &curve, spec.start_angle, region, samples))
        })
        .collect::<Result<Vec<_>, ValidateError>>()?;
    let mut case_counts = [0; 4];
    for r in &results {
        case_counts[r.case_used.map_or(0, usize::from)] += 1;
    }
    Ok(BatchSummary {
        curves: results.len(),
        contained: results.iter().filter(|r| r.contained).count(),
        worst_violation: results.iter().map(|r| r.max_violation).reduce(f64::max),
        failures: results.into_iter().filter(|r| !r.contained).collect(),
        case_counts,
    })
}
