//! Hansen's dodecagon-corner slivers: the `x_i` recurrence and the areas
//! `a_i` of the regions cut off by unit arcs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{PrecisionContext, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HansenError {
    #[error("table needs at least one row")]
    NoRows,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HansenRow {
    pub i: usize,
    pub x: Scalar,
    pub a: Scalar,
}

/// `x₀ = 1 − √3/2`.
pub fn x_initial(ctx: PrecisionContext) -> Scalar {
    let half_root3 = &ctx.int(3).sqrt().expect("3 > 0") / &ctx.int(2);
    &ctx.one() - &half_root3
}

/// `x_{i+1} = 2x² / (1 − √3·x + √(1 − 2√3·x − x²))`, the rationalized root
/// of the quadratic relation, free of cancellation for small `x`.
pub fn x_next(x: &Scalar) -> Result<Scalar, ScalarError> {
    let ctx = x.context();
    let root3 = ctx.int(3).sqrt()?;
    let two = ctx.int(2);
    let radicand = &(&ctx.one() - &(&(&two * &root3) * x)) - &x.square();
    let denom = &(&ctx.one() - &(&root3 * x)) + &radicand.sqrt()?;
    Ok(&(&two * &x.square()) / &denom)
}

/// Area of the sliver between the two dodecagon edges of lengths `x_i`,
/// `x_{i+1}` and the unit arc across them.
pub fn area_row(x_i: &Scalar, x_next: &Scalar) -> Result<Scalar, ScalarError> {
    let ctx = x_i.context();
    let two = ctx.int(2);
    let half_root3 = &ctx.int(3).sqrt()? / &two;
    let d = (&(&x_next.square() / &ctx.int(4)) + &(x_i + &(&half_root3 * x_next)).square()).sqrt()?;
    let theta = &two * &(&d / &two).asin()?;
    let triangle = &(x_i * x_next) / &ctx.int(4);
    Ok(&triangle - &(&theta.x_minus_sin() / &two))
}

pub fn table(rows: usize, ctx: PrecisionContext) -> Result<Vec<HansenRow>, HansenError> {
    if rows == 0 {
        return Err(HansenError::NoRows);
    }
    let mut xs = vec![x_initial(ctx)];
    for i in 0..rows {
        let next = x_next(&xs[i])?;
        xs.push(next);
    }
    (0..rows)
        .map(|i| {
            Ok(HansenRow {
                i,
                x: xs[i].clone(),
                a: area_row(&xs[i], &xs[i + 1])?,
            })
        })
        .collect()
}
