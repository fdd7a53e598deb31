//! JSON output shapes. Every real number is a decimal string.

use std::collections::BTreeMap;

use serde::Serialize;
use unicover::cover::{ConstructionReport, HexPair, LABELS};
use unicover::geom::{Element, Point};
use unicover::hansen::HansenRow;
use unicover::validate::{BatchSummary, PlacementResult};
use unicover::{OptimizeResult, PrecisionContext, Scalar};

const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Row {
    i: usize,
    x: String,
    a: String,
}

#[derive(Serialize)]
pub struct TableOut {
    schema: u32,
    command: &'static str,
    precision: u32,
    rows: Vec<Row>,
}

impl TableOut {
    pub fn new(ctx: PrecisionContext, rows: &[HansenRow]) -> Self {
        Self {
            schema: SCHEMA,
            command: "table1",
            precision: ctx.digits(),
            rows: rows
                .iter()
                .map(|r| Row {
                    i: r.i,
                    x: r.x.to_string(),
                    a: r.a.to_string(),
                })
                .collect(),
        }
    }
}

pub fn table_text(rows: &[HansenRow]) -> String {
    let mut out = format!("{:>2}  {:<20}  {:<20}\n", "i", "x_i", "a_i");
    for r in rows {
        out += &format!(
            "{:>2}  {:<20}  {:<20}\n",
            r.i,
            r.x.to_scientific(13),
            r.a.to_scientific(13)
        );
    }
    out
}

#[derive(Serialize)]
pub struct AreaOut {
    schema: u32,
    command: &'static str,
    precision: u32,
    sigma_deg: String,
    sigma_rad: String,
    area: String,
    #[serde(rename = "angle_WYL_deg")]
    angle_wyl_deg: String,
    #[serde(rename = "angle_MWY_deg")]
    angle_mwy_deg: String,
    #[serde(rename = "wxy_in_Bprime")]
    wxy_in_bprime: bool,
    constraints_ok: bool,
    points: BTreeMap<String, Point>,
    boundary: Vec<Element>,
}

/// Named points of the construction plus the vertices of both hexagons.
pub fn all_points(report: &ConstructionReport, hexagons: &HexPair) -> BTreeMap<String, Point> {
    let mut points = BTreeMap::new();
    for name in ["O", "N", "L", "M", "W", "X", "Y"] {
        let p = report.points.get(name).expect("known name");
        points.insert(name.to_owned(), p.clone());
    }
    for (k, label) in LABELS.iter().enumerate() {
        points.insert(format!("{label}1"), hexagons.hexagon[k].clone());
        points.insert(format!("{label}1'"), hexagons.rotated[k].clone());
    }
    points
}

impl AreaOut {
    pub fn new(ctx: PrecisionContext, sigma_deg: &str, report: &ConstructionReport, hexagons: &HexPair) -> Self {
        Self {
            schema: SCHEMA,
            command: "area",
            precision: ctx.digits(),
            sigma_deg: sigma_deg.to_owned(),
            sigma_rad: report.sigma.to_string(),
            area: report.area.to_string(),
            angle_wyl_deg: report.angle_wyl.to_degrees().to_string(),
            angle_mwy_deg: report.angle_mwy.to_degrees().to_string(),
            wxy_in_bprime: report.wxy_in_bprime,
            constraints_ok: report.constraints_ok,
            points: all_points(report, hexagons),
            boundary: report.boundary.elements().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct OptimizeOut {
    schema: u32,
    command: &'static str,
    precision: u32,
    sigma_star_deg: String,
    sigma_star_rad: String,
    area: String,
    bracket_deg: [String; 2],
    iterations: u32,
    all_constraints_verified: bool,
}

impl OptimizeOut {
    pub fn new(ctx: PrecisionContext, r: &OptimizeResult) -> Self {
        let deg = |s: &Scalar| s.to_degrees().to_string();
        Self {
            schema: SCHEMA,
            command: "optimize",
            precision: ctx.digits(),
            sigma_star_deg: deg(&r.sigma_star),
            sigma_star_rad: r.sigma_star.to_string(),
            area: r.area.to_string(),
            bracket_deg: [deg(&r.bracket.0), deg(&r.bracket.1)],
            iterations: r.iterations,
            all_constraints_verified: r.all_constraints_verified,
        }
    }
}

#[derive(Serialize)]
pub struct Failure {
    curve_id: usize,
    kind: unicover::validate::CurveKind,
    rotation_deg: String,
    translation: [String; 2],
    reflected: bool,
    max_violation: String,
    case_used: Option<u8>,
}

impl From<&PlacementResult> for Failure {
    fn from(r: &PlacementResult) -> Self {
        Self {
            curve_id: r.curve_id,
            kind: r.kind,
            rotation_deg: r.rotation.to_degrees().to_string(),
            translation: r.translation.map(|t| t.to_string()),
            reflected: r.reflected,
            max_violation: r.max_violation.to_string(),
            case_used: r.case_used,
        }
    }
}

#[derive(Serialize)]
pub struct CaseCounts {
    unplaced: usize,
    case1: usize,
    case2: usize,
    case3: usize,
}

#[derive(Serialize)]
pub struct ValidateOut {
    schema: u32,
    command: &'static str,
    sigma_deg: String,
    seed: u64,
    boundary_samples: usize,
    inflate_wxy: Option<String>,
    curves: usize,
    contained: usize,
    failures: usize,
    worst_violation: Option<String>,
    case_counts: CaseCounts,
    witnesses: Vec<Failure>,
}

impl ValidateOut {
    pub fn new(
        sigma_deg: &str,
        seed: u64,
        boundary_samples: usize,
        inflate_wxy: Option<f64>,
        s: &BatchSummary,
    ) -> Self {
        let [unplaced, case1, case2, case3] = s.case_counts;
        Self {
            schema: SCHEMA,
            command: "validate",
            sigma_deg: sigma_deg.to_owned(),
            seed,
            boundary_samples,
            inflate_wxy: inflate_wxy.map(|f| f.to_string()),
            curves: s.curves,
            contained: s.contained,
            failures: s.failures.len(),
            worst_violation: s.worst_violation.map(|v| v.to_string()),
            case_counts: CaseCounts {
                unplaced,
                case1,
                case2,
                case3,
            },
            witnesses: s.failures.iter().map(Failure::from).collect(),
        }
    }
}
