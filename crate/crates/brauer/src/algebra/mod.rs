//! Quiver presentations of Brauer graph algebras, brute-force bases, gentle quotients and
//! trivial extensions.

mod basis;
mod gentle;
mod quiver;

pub use basis::{quotient_basis, trivial_extension, AlgebraBasis, BasisLabel};
pub use gentle::{
    all_cuts, gentle_quotient, schroll_isomorphism, validate_cut, DiagonalIsomorphism, GentlePresentation,
};
pub use quiver::{
    arrow_of, build_quiver, full_turn, is_caterpillar_quiver, turn_path, Arrow, Cycle, Path, PresentationKind,
    QuiverPresentation, Relation,
};

use thiserror::Error;

use crate::ribbon::BrauerGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("this presentation kind does not support deformed loops")]
    DeformedNotSupported,
    #[error("basis has dimension {got}, but the sum of m(v)·val(v)² is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("paths of length {0} survive; the length bound is too small")]
    BoundTooSmall(usize),
    #[error("the idempotent of vertex {0} lies in the ideal")]
    IdentityInIdeal(usize),
    #[error("not a cut: {0}")]
    NotACut(String),
    #[error("the gentle quotient needs all multiplicities equal to 1 and no deformed loops")]
    NotMultiplicityOne,
    #[error("quotient is not gentle: {0}")]
    NotGentle(String),
    #[error("no diagonal isomorphism: {0}")]
    NoDiagonalIsomorphism(String),
}

/// `Σ_v m(v)·val(v)²`.
pub fn expected_dimension(g: &BrauerGraph) -> usize {
    let r = g.ribbon();
    (0..r.vertex_count())
        .map(|v| g.mult_at(v) as usize * r.valency(v).pow(2))
        .sum()
}

/// One more than the longest cycle power.
pub fn length_bound(g: &BrauerGraph) -> usize {
    (0..g.vertex_count()).map(|v| g.cycle_length(v)).max().unwrap_or(0) + 1
}

/// Basis of the algebra of a presentation, computed by brute force.
pub fn presentation_basis(g: &BrauerGraph, p: &QuiverPresentation) -> Result<AlgebraBasis, AlgebraError> {
    quotient_basis(p.vertex_count, &p.arrows, &p.relations, length_bound(g))
}

/// Basis and multiplication table, checked against `Σ_v m(v)·val(v)²`.
pub fn basis_and_dimension(g: &BrauerGraph) -> Result<AlgebraBasis, AlgebraError> {
    let kind = if g.deformed().is_empty() {
        PresentationKind::Ordinary
    } else {
        PresentationKind::StablyBiserial
    };
    let basis = presentation_basis(g, &build_quiver(g, kind)?)?;
    let expected = expected_dimension(g);
    if basis.dimension() != expected {
        return Err(AlgebraError::DimensionMismatch {
            expected,
            got: basis.dimension(),
        });
    }
    Ok(basis)
}

pub fn is_caterpillar(g: &BrauerGraph) -> bool {
    let kind = if g.deformed().is_empty() {
        PresentationKind::Ordinary
    } else {
        PresentationKind::StablyBiserial
    };
    build_quiver(g, kind)
        .map(|p| is_caterpillar_quiver(&p))
        .unwrap_or(false)
}
