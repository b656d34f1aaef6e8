//! Exact computations with Cox rings of smooth complete toric varieties.
//!
//! The crate covers the class group and graded Cox ring of a fan, the
//! generalized Euler module with its derivation and the weighted Euler map,
//! and the inverse construction that rebuilds a fan from grading data.
//! All arithmetic is exact: integers are arbitrary precision and
//! coefficients are rationals.

pub mod corpus;
pub mod cox;
pub mod euler;
pub mod fan;
pub mod lattice;
pub mod par;
pub mod poly;
pub mod polyhedral;
pub mod reconstruct;

pub use cox::{CoxData, CoxError, GradedPolynomial, MonomialIdeal};
pub use euler::{little_hilbert_check, EulerError, EulerModule, EulerModuleElement};
pub use fan::{Fan, FanError, TorusInvariantDivisor};
pub use lattice::{AbelianGroupPresentation, IntegerMatrix, LatticeMap};
pub use par::Strategy;
pub use poly::Polynomial;
pub use polyhedral::{LinearFormKappa, RationalCone, RationalPolytope};
pub use reconstruct::{GradingInput, ReconstructError, SplittingCertificate};
