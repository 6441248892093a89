//! A∞ Brauer graph categories of graded arc systems, their trivial extensions, and exhaustive
//! checks of the A∞ relations.

mod arcs;
mod brauer;
mod category;
mod compare;
mod relations;

pub use arcs::{polygon_disc, square_disc, triangle_disc, GradedArcSystem};
pub use brauer::{build_category, BrauerCategory, BrauerElement};
pub use category::{trivial_extension, AInfCategory, Element};
pub use compare::{
    check_fixture, compare_categories, convention_search, gentle_category, schroll_correspondence, schroll_round_trip,
    Correspondence, FixtureCheck, Mismatch, Twist, TWISTS,
};
pub use relations::{
    candidate_tuples, default_max_len, residual, verify_relations, verify_relations_brute_force, RelationFailure,
    RelationReport,
};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AinfError {
    #[error("grading violation: {0}")]
    GradingViolation(String),
    #[error("arc system is not admissible: {0}")]
    NotAdmissible(String),
    #[error("arc systems with deformed loops are not supported")]
    DeformedNotSupported,
    #[error("inputs {0:?} are not composable")]
    NotComposable(Vec<usize>),
    #[error("malformed correspondence: {0}")]
    MalformedCorrespondence(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Whether a sign `(-1)^e` is applied as written (`Plus`) or replaced by `+1` (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Toggle {
    Plus,
    Minus,
}

impl Toggle {
    pub fn applies(self) -> bool {
        self == Toggle::Plus
    }
}

/// The three sign sites: `(-1)^{|b|}` in `μ²`, `(-1)^†` in trivial extensions and `(-1)^∘` in
/// (HigherOps5). `mu2_flip` negates every (Mu2) output and exists to exercise the checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignConvention {
    pub composition: Toggle,
    pub trivial_extension: Toggle,
    pub higher: Toggle,
    pub mu2_flip: bool,
}

/// The unique combination passing the relation suite.
pub const FROZEN_CONVENTION: SignConvention = SignConvention {
    composition: Toggle::Plus,
    trivial_extension: Toggle::Plus,
    higher: Toggle::Plus,
    mu2_flip: false,
};

impl Default for SignConvention {
    fn default() -> Self {
        FROZEN_CONVENTION
    }
}

impl SignConvention {
    /// The eight toggle combinations, without the (Mu2) flip.
    pub fn all() -> Vec<SignConvention> {
        let both = [Toggle::Plus, Toggle::Minus];
        let mut out = Vec::with_capacity(8);
        for composition in both {
            for trivial_extension in both {
                for higher in both {
                    out.push(SignConvention {
                        composition,
                        trivial_extension,
                        higher,
                        mu2_flip: false,
                    });
                }
            }
        }
        out
    }
}
