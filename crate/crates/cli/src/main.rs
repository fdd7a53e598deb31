mod report;
mod svg;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use unicover::cover::{build_hexagons, construct, CoverError};
use unicover::hansen;
use unicover::optimize::{default_bracket, find_sigma_star, OptimizeError};
use unicover::validate::{batch, standard_batch, CoveringRegion, Mutation, DEFAULT_SAMPLES};
use unicover::{PrecisionContext, Scalar};

use crate::report::{AreaOut, OptimizeOut, TableOut, ValidateOut};

#[derive(Parser, Debug)]
#[command(name = "unicover", version, about = "Universal coverings for sets of unit diameter")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lengths and sliver areas of the dodecagon-corner recurrence.
    Table1 {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        rows: u32,
        #[arg(long, default_value_t = PrecisionContext::DEFAULT_DIGITS, value_parser = precision)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the covering for one slant angle.
    Area {
        #[arg(long, allow_hyphen_values = true)]
        sigma_deg: String,
        #[arg(long, default_value_t = PrecisionContext::DEFAULT_DIGITS, value_parser = precision)]
        precision: u32,
    },
    /// Find the smallest slant with a right binding angle.
    Optimize {
        #[arg(long, default_value_t = PrecisionContext::DEFAULT_DIGITS, value_parser = precision)]
        precision: u32,
        /// Search bracket in degrees.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        bracket_deg: Option<Vec<String>>,
    },
    /// Place seeded constant-width curves in the covering.
    Validate {
        /// Number of curves.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "1.3", allow_hyphen_values = true)]
        sigma_deg: String,
        /// Boundary samples per curve.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        boundary_samples: usize,
        /// Grow the sliver WXY by this area factor before placing.
        #[arg(long)]
        inflate_wxy: Option<f64>,
    },
    /// Draw the construction as SVG.
    Svg {
        #[arg(long, default_value = "1.3", allow_hyphen_values = true)]
        sigma_deg: String,
        #[arg(long, default_value_t = PrecisionContext::DEFAULT_DIGITS, value_parser = precision)]
        precision: u32,
        /// Named point (O, N, L, M, W, X, Y, A1…F1) or `x,y`.
        #[arg(long)]
        zoom: Option<String>,
        #[arg(long, default_value = "1")]
        scale: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn precision(s: &str) -> Result<u32, String> {
    let d: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if d < PrecisionContext::MIN_DIGITS {
        return Err(format!("precision must be at least {} digits", PrecisionContext::MIN_DIGITS));
    }
    Ok(d)
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Degenerate(serde_json::Value),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::SigmaRange(s) => CliError::Usage(format!("slant {s} rad is outside (0°, 10°)")),
            CoverError::Degenerate { sigma, detail, points } => CliError::Degenerate(serde_json::json!({
                "schema": 1,
                "error": "degenerate",
                "sigma_rad": sigma,
                "detail": detail,
                "points": points
                    .into_iter()
                    .map(|(name, p)| serde_json::json!({"name": name, "x": p.x.to_string(), "y": p.y.to_string()}))
                    .collect::<Vec<_>>(),
            })),
            other => CliError::Degenerate(serde_json::json!({
                "schema": 1,
                "error": "construction",
                "detail": other.to_string(),
            })),
        }
    }
}

fn context(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits).expect("validated by the argument parser")
}

/// Slant in degrees, strictly inside (0°, 10°).
fn sigma_rad(deg: &str, ctx: PrecisionContext) -> Result<Scalar, CliError> {
    let d = ctx.parse(deg).map_err(|e| CliError::Usage(format!("--sigma-deg: {e}")))?;
    if !d.is_positive() || d >= ctx.int(10) {
        return Err(CliError::Usage(format!("--sigma-deg {deg} is outside (0, 10)")));
    }
    Ok(d.to_radians())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Table1 { rows, precision, format } => {
            let ctx = context(*precision);
            let rows = hansen::table(*rows as usize, ctx).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(match format {
                Format::Json => to_json(&TableOut::new(ctx, &rows)),
                Format::Text => report::table_text(&rows),
            })
        }
        Command::Area { sigma_deg, precision } => {
            let ctx = context(*precision);
            let sigma = sigma_rad(sigma_deg, ctx)?;
            let report = construct(&sigma, ctx)?;
            let hexagons = build_hexagons(&sigma, ctx)?;
            Ok(to_json(&AreaOut::new(ctx, sigma_deg, &report, &hexagons)))
        }
        Command::Optimize { precision, bracket_deg } => {
            let ctx = context(*precision);
            let (lo, hi) = match bracket_deg.as_deref() {
                Some([lo, hi]) => {
                    let parse = |s: &String| {
                        ctx.parse(s)
                            .map(|d| d.to_radians())
                            .map_err(|e| CliError::Usage(format!("--bracket-deg: {e}")))
                    };
                    (parse(lo)?, parse(hi)?)
                }
                _ => default_bracket(ctx),
            };
            let result = find_sigma_star(&lo, &hi, ctx).map_err(|e| match e {
                OptimizeError::Cover(c) => CliError::from(c),
                other => CliError::Usage(other.to_string()),
            })?;
            Ok(to_json(&OptimizeOut::new(ctx, &result)))
        }
        Command::Validate {
            samples,
            seed,
            sigma_deg,
            boundary_samples,
            inflate_wxy,
        } => {
            let ctx = context(PrecisionContext::MIN_DIGITS);
            let sigma = sigma_rad(sigma_deg, ctx)?;
            let report = construct(&sigma, ctx)?;
            if !report.constraints_ok {
                return Err(CliError::Usage(format!(
                    "σ = {sigma_deg}° violates the covering constraints; nothing to validate"
                )));
            }
            let mut region = CoveringRegion::from_report(&report).map_err(|e| CliError::Usage(e.to_string()))?;
            if let Some(factor) = inflate_wxy {
                if !(factor.is_finite() && *factor >= 1.0) {
                    return Err(CliError::Usage(format!("--inflate-wxy {factor} must be ≥ 1")));
                }
                region = region.mutated(Mutation::InflateWxy { factor: *factor });
            }
            let specs = standard_batch(*samples, *seed);
            let summary = batch(&specs, &region, *boundary_samples).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(to_json(&ValidateOut::new(
                sigma_deg,
                *seed,
                *boundary_samples,
                *inflate_wxy,
                &summary,
            )))
        }
        Command::Svg {
            sigma_deg,
            precision,
            zoom,
            scale,
        } => {
            let ctx = context(*precision);
            let sigma = sigma_rad(sigma_deg, ctx)?;
            let scale = ctx
                .parse(scale)
                .ok()
                .filter(Scalar::is_positive)
                .ok_or_else(|| CliError::Usage(format!("--scale {scale} must be a positive number")))?;
            let report = construct(&sigma, ctx)?;
            let hexagons = build_hexagons(&sigma, ctx)?;
            let figure = svg::Figure::new(&report, &hexagons);
            let center = match zoom {
                Some(z) => figure.resolve(z, ctx).map_err(CliError::Usage)?,
                None => unicover::Point::origin(ctx),
            };
            Ok(figure.render(sigma_deg, &center, &scale))
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(cli.output.as_ref(), &out));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Io(m) => eprintln!("error: cannot write {m}"),
                CliError::Degenerate(v) => println!("{}", to_json(v).trim_end()),
            }
            ExitCode::from(e.code())
        }
    }
}
