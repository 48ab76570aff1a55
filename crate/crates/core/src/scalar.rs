//! Scalar fields the engine can compute over.
//!
//! Every structure constant in this crate is an integer, so any exact field of
//! characteristic zero gives the same ranks. [`BigRational`] is the default;
//! fixed-width ratios are accepted for small instances and tests.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// An exact field of characteristic zero.
///
/// Floating point types deliberately do not implement this: ranks computed
/// with rounding are not ranks.
pub trait Field:
    Clone + PartialEq + PartialOrd + Debug + Display + FromStr + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Embeds an integer structure constant.
    fn from_int(n: i64) -> Self;
}

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl Field for Ratio<i128> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }
}
