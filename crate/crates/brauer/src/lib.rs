//! Exact computations with Brauer graph algebras: ribbon graphs, quiver presentations and
//! bases, derived invariants, Kauer moves, and A-infinity Brauer graph categories.

pub mod ainf;
pub mod algebra;
pub mod bgfile;
pub mod invariants;
pub mod kauer;
pub mod linalg;
pub mod ribbon;

/// Exact scalars used throughout.
pub type Scalar = num_rational::Rational64;
