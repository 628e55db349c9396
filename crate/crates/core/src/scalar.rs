//! The exact scalar abstraction shared by every algorithm in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_traits::{FromPrimitive, Num, Signed};

/// An exact, totally ordered field element.
///
/// Any type with exact arithmetic and a total order qualifies; in practice
/// that means [`num_rational::BigRational`] (the default, overflow-free) or a
/// fixed-width ratio such as [`num_rational::Rational64`]. Floating-point types
/// are excluded by the `Ord` bound.
pub trait Scalar:
    Clone
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Num
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Clone
        + Ord
        + Hash
        + fmt::Debug
        + fmt::Display
        + Num
        + Signed
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Converts a small count (agent or good number) into the scalar type.
pub fn from_count<T: Scalar>(k: usize) -> T {
    T::from_usize(k).expect("count representable in scalar type")
}

/// A finite scalar or positive infinity.
///
/// Used for price-of-fairness values, where `x / 0` with `x > 0` is infinite
/// and `0 / 0` is taken to be 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedValue<T> {
    Finite(T),
    Infinity,
}

impl<T: Scalar> ExtendedValue<T> {
    /// `numerator / denominator` for nonnegative operands.
    pub fn ratio(numerator: &T, denominator: &T) -> Self {
        debug_assert!(!numerator.is_negative() && !denominator.is_negative());
        if denominator.is_zero() {
            if numerator.is_zero() {
                ExtendedValue::Finite(T::one())
            } else {
                ExtendedValue::Infinity
            }
        } else {
            ExtendedValue::Finite(numerator.clone() / denominator.clone())
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinity)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            ExtendedValue::Infinity => None,
        }
    }
}

impl<T: Ord> PartialOrd for ExtendedValue<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ord> Ord for ExtendedValue<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.cmp(b),
            (ExtendedValue::Finite(_), ExtendedValue::Infinity) => Ordering::Less,
            (ExtendedValue::Infinity, ExtendedValue::Finite(_)) => Ordering::Greater,
            (ExtendedValue::Infinity, ExtendedValue::Infinity) => Ordering::Equal,
        }
    }
}

impl<T: fmt::Display> fmt::Display for ExtendedValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(v) => v.fmt(f),
            ExtendedValue::Infinity => f.write_str("inf"),
        }
    }
}
