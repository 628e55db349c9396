//! Exact solver for egalitarian welfare and the price of fairness when
//! dividing indivisible goods among agents with additive utilities.
//!
//! All arithmetic is exact. The algorithms are generic over a [`Scalar`]
//! (any exact ordered field); [`Rational`] is the arbitrary-precision default
//! and the aliases below fix it.
//!
//! Agents and goods are numbered from 1 in every public signature.

pub mod constructions;
pub mod error;
pub mod io;
pub mod model;
pub mod properties;
pub mod random;
pub mod report;
pub mod round_robin;
pub mod scalar;
pub mod solvers;
pub mod verify;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use model::{egalitarian_welfare, nash_welfare, utilitarian_welfare, Allocation};
pub use scalar::{ExtendedValue, Scalar};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Instance over [`Rational`] utilities.
pub type Instance = model::Instance<Rational>;

/// Price-of-fairness value over [`Rational`].
pub type Pof = ExtendedValue<Rational>;

/// Solver output over [`Rational`].
pub type SolveResult = solvers::SolveResult<Rational>;

/// Instance over 64-bit rationals; faster, but overflows on large denominators.
pub type Instance64 = model::Instance<num_rational::Rational64>;
