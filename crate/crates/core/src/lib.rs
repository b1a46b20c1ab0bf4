//! Exact combinatorics of orbit polytopes.
//!
//! An orbit polytope is the convex hull of all coordinate permutations of a
//! point. Up to normal equivalence such a polytope is determined by an integer
//! composition, and the classes form a Hopf monoid whose product is cartesian
//! product and whose coproduct cuts a polytope into its maximal face in a given
//! direction. This crate provides:
//!
//! * [`composition`]: concatenation, near-concatenation, splits, refinement;
//! * [`geometry`]: vertex enumeration, face maximization and brute-force
//!   checks of normal equivalence and base-polytope descriptions;
//! * [`monoid`]: labeled classes with product, coproduct and species counts;
//! * [`hcomp`]: the graded Hopf algebra of compositions;
//! * [`nsym`]: characters, convolution and truncated ribbon series;
//! * [`invariants`]: the basic character and its polynomial invariant.
//!
//! All arithmetic is exact: scalars are [`Rational`]s and counts are
//! arbitrary-precision integers.

pub mod bounds;
pub mod composition;
pub mod error;
pub mod geometry;
pub mod hcomp;
pub mod invariants;
pub mod monoid;
pub mod nsym;
pub mod scalar;
pub mod selftest;

pub use bounds::Bounds;
pub use composition::Composition;
pub use error::{Error, Result};
pub use scalar::Rational;
