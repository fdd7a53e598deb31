//! Universal coverings for sets of unit diameter, computed in decimal
//! arbitrary precision.
//!
//! The covering is the regular hexagon of width 1 with six corner triangles
//! and a sliver near one corner removed, parametrized by the slant `σ` of a
//! second hexagon. [`cover::construct`] builds it, [`optimize`] finds the
//! smallest admissible slant, [`hansen`] recomputes the dodecagon-corner
//! slivers, and [`validate`] places constant-width curves inside it.

pub mod cover;
pub mod geom;
pub mod hansen;
pub mod optimize;
pub mod scalar;
pub mod validate;

pub use cover::{construct, ConstructionReport, CoverError};
pub use geom::{CoveringBoundary, Point};
pub use optimize::{find_sigma_star, OptimizeResult};
pub use scalar::{PrecisionContext, Scalar, ScalarError};

/// Published upper bounds on the minimal universal-cover area, largest first.
pub mod bounds {
    use crate::scalar::{PrecisionContext, Scalar};

    /// Sprague's covering.
    pub const SPRAGUE: &str = "0.844137708436";
    /// Hansen's covering, with the corrected sliver areas.
    pub const HANSEN: &str = "0.844137708398";
    /// Best known lower bound.
    pub const LOWER: &str = "0.832";

    /// `√3/2`, the regular hexagon of width 1.
    pub fn hexagon(ctx: PrecisionContext) -> Scalar {
        &ctx.int(3).sqrt().expect("3 > 0") / &ctx.int(2)
    }

    /// `2 − 2/√3`, Pál's truncated hexagon.
    pub fn pal(ctx: PrecisionContext) -> Scalar {
        let root3 = ctx.int(3).sqrt().expect("3 > 0");
        &ctx.int(2) - &(&ctx.int(2) / &root3)
    }

    pub fn parse(ctx: PrecisionContext, literal: &str) -> Scalar {
        ctx.parse(literal).expect("bound literals are well formed")
    }
}
