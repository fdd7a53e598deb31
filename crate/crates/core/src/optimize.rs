//! Smallest admissible slant: the root of `∠WYL(σ) = 90°`.
//!
//! Below the root the binding angle is acute and the covering argument
//! fails; above it the area grows. The search is an Illinois-modified regula
//! falsi on `∠WYL(σ) − π/2` with a bisection fallback whenever a step fails
//! to halve the bracket.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{build_hexagons, construct, locate_points, ConstructionReport, CoverError};
use crate::geom::interior_angle;
use crate::scalar::{PrecisionContext, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OptimizeError {
    #[error("bracket [{lo}, {hi}] rad does not straddle ∠WYL = 90° (values {f_lo}, {f_hi} rad from a right angle)")]
    Bracket {
        lo: String,
        hi: String,
        f_lo: String,
        f_hi: String,
    },
    #[error("root σ = {0} rad fails the remaining constraints")]
    Inconsistent(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub sigma_star: Scalar,
    pub area: Scalar,
    pub bracket: (Scalar, Scalar),
    pub iterations: u32,
    pub all_constraints_verified: bool,
}

/// `∠WYL(σ) − π/2`.
pub fn binding_margin(sigma: &Scalar, ctx: PrecisionContext) -> Result<Scalar, CoverError> {
    let hp = build_hexagons(sigma, ctx)?;
    let np = locate_points(&hp)?;
    let angle = interior_angle(&np.y, &np.w, &np.l)?;
    Ok(&angle - &(&ctx.pi() / &ctx.int(2)))
}

/// Default search bracket, 1° to 1.5°, in radians.
pub fn default_bracket(ctx: PrecisionContext) -> (Scalar, Scalar) {
    (
        ctx.one().to_radians(),
        ctx.parse("1.5").expect("literal").to_radians(),
    )
}

pub fn find_sigma_star(
    lo: &Scalar,
    hi: &Scalar,
    ctx: PrecisionContext,
) -> Result<OptimizeResult, OptimizeError> {
    let bracket_error = |f_lo: &str, f_hi: &str| OptimizeError::Bracket {
        lo: lo.to_string(),
        hi: hi.to_string(),
        f_lo: f_lo.to_owned(),
        f_hi: f_hi.to_owned(),
    };
    if lo >= hi {
        return Err(bracket_error("-", "-"));
    }
    let margin = |s: &Scalar| binding_margin(s, ctx);
    // a: infeasible side, b: feasible side
    let (mut a, mut fa) = (lo.with_digits(ctx.digits()), margin(lo)?);
    let (mut b, mut fb) = (hi.with_digits(ctx.digits()), margin(hi)?);
    if !fa.is_negative() || fb.is_negative() {
        return Err(bracket_error(&fa.to_string(), &fb.to_string()));
    }
    let tol = ctx.eps(10);
    let two = ctx.int(2);
    let mut iterations = 0;
    let mut last_moved: Option<bool> = None;
    let mut width = &b - &a;
    let mut slow_steps = 0;
    while width >= tol {
        iterations += 1;
        let candidate = if slow_steps >= 2 {
            slow_steps = 0;
            &(&a + &b) / &two
        } else {
            // secant through the (possibly Illinois-scaled) endpoint values
            let t = &(&b - &a) * &(&fb / &(&fb - &fa));
            let c = &b - &t;
            if c <= a || c >= b {
                &(&a + &b) / &two
            } else {
                c
            }
        };
        let fc = margin(&candidate)?;
        let moved_a = fc.is_negative();
        if moved_a {
            a = candidate;
            fa = fc;
            if last_moved == Some(true) {
                fb = &fb / &two;
            }
        } else {
            b = candidate;
            fb = fc;
            if last_moved == Some(false) {
                fa = &fa / &two;
            }
        }
        last_moved = Some(moved_a);
        let new_width = &b - &a;
        if &new_width * &two > width {
            slow_steps += 1;
        }
        width = new_width;
    }
    let report = construct(&b, ctx)?;
    let right = &ctx.pi() / &ctx.int(2);
    if report.angle_wyl < right {
        return Err(OptimizeError::Inconsistent(b.to_string()));
    }
    let verified = report.constraints_ok;
    if !verified {
        return Err(OptimizeError::Inconsistent(b.to_string()));
    }
    Ok(OptimizeResult {
        sigma_star: b.clone(),
        area: report.area,
        bracket: (a, b),
        iterations,
        all_constraints_verified: verified,
    })
}

/// One construction per slant angle, in input order; failures stay inline.
pub fn scan(
    sigmas: &[Scalar],
    ctx: PrecisionContext,
) -> Vec<Result<ConstructionReport, CoverError>> {
    sigmas.par_iter().map(|s| construct(s, ctx)).collect()
}
