//! Workbench for computations in quasi-abelian categories at desk scale.
//!
//! The exact side works in the abelian category of finitely presented
//! modules over `Z` (or over the localization of `Z` at a prime), built on
//! Smith normal forms of exact rational matrices.  On top of that sit
//! torsion pairs, class-restricted (co)limits, and a classifier for
//! strict/universal mono- and epimorphisms.  A symbolic calculus of
//! "standard" groups (finite direct sums of `Z`, `Z/n`, `Q`, `Z[1/p]`,
//! Prüfer groups and `Q/Z`) mechanizes the divisible-group side, and a
//! small numerical module provides bounded-below diagnostics for matrix
//! operators.

pub mod divkit;
pub mod exact;
pub mod fpmod;
pub mod matrix;
pub mod normtool;
pub mod rng;
pub mod scalar;
pub mod torsion;
pub mod universality;

pub use matrix::Matrix;

/// Arbitrary-precision integer used throughout the exact side.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the exact side.
pub type Rational = num_rational::BigRational;

/// Exact matrix over the rationals (ring-tagged wrappers live in [`exact`]).
pub type RatMatrix = Matrix<Rational>;
/// Double-precision matrix used by the numerical diagnostics.
pub type NumMatrix = Matrix<f64>;
/// Double-precision operator, the concrete instantiation of [`normtool::Operator`].
pub type NumOperator = normtool::Operator<f64>;
