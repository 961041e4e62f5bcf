//! Analogical proportions `a:b::c:d` over finite and built-in algebras.

pub mod algebra;
pub mod antiunify;
pub mod axioms;
pub mod closed_form;
pub mod decider;
pub mod error;
pub mod oracle;
pub mod terms;
pub mod tree;

pub use error::{Error, Result};

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision naturals.
pub type Natural = num_bigint::BigUint;
/// Rationals in lowest terms with positive denominators.
pub type Rational = num_rational::BigRational;
/// (ℤ,+,ℤ).
pub type IntAdd = algebra::Additive<Integer>;
/// (ℚ,·,ℚ).
pub type RatMul = algebra::Rationals<Integer>;
/// (ℕ₂,·,ℕ₂).
pub type NatMul = algebra::Naturals<Natural>;
