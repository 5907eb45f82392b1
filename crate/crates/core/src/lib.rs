//! Exposed extreme rays of the cone of sums of nonnegative circuit (SONC)
//! polynomials on a finite ground set `A ⊆ ℕⁿ`.
//!
//! The pipeline:
//!
//! 1. [`circuits::enumerate_circuits`] lists every simplicial circuit `(S, β)`
//!    with exact barycentric coordinates.
//! 2. [`rays::catalog_extreme_rays`] lists the monomial rays and the
//!    reduced-circuit families.
//! 3. [`exposing::decide_exposed`] applies the combinatorial criterion: a
//!    monomial ray `x^γ` is unexposed iff some circuit has `γ ∈ S` and an
//!    even `β ≠ γ`; every other ray is exposed.
//! 4. [`SoncCone::certify`] builds an explicit exposing functional from a
//!    graded partition of the even points.
//! 5. [`verify::verify_certificate`] checks it exactly against every family.
//!
//! All decisions use exact rational arithmetic; irrational quantities such as
//! circuit numbers are carried as [`power::PowerProduct`] values.

pub mod circuits;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod exposing;
pub mod geometry;
pub mod grading;
pub mod lattice;
pub mod power;
pub mod rational;
pub mod rays;
pub mod verify;

pub use circuits::{Circuit, Parity};
pub use cone::SoncCone;
pub use error::{Error, Result};
pub use exposing::{ExactScalar, ExposednessDecision, ExposingFunctional, SigmaDelta};
pub use geometry::BarycentricCoords;
pub use grading::GradedPartition;
pub use lattice::{parse_ground_set, GroundSet, LatticePoint};
pub use power::PowerProduct;
pub use rational::Rational;
pub use rays::{ExtremeRay, Polynomial, Sign};
pub use verify::{Certificate, Verdict};
