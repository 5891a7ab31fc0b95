//! Scalar field abstraction.
//!
//! Every algorithm in this crate is written against [`Scalar`], which is only
//! implemented for exact fraction types `Ratio<T>`. Ranks, kernels and
//! quotients are discontinuous functions of the entries, so inexact scalars
//! are deliberately not supported.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field usable as the coefficient type of matrices, subspaces and
/// graded representations.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// Parses `"p/q"` or `"p"`. A zero denominator is an error.
    fn parse_exact(s: &str) -> Result<Self, String>;

    /// The non-negative square root, if this value is the square of a scalar.
    fn exact_sqrt(&self) -> Option<Self>;

    /// True when the value is an integer (denominator one).
    fn is_integral(&self) -> bool;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Debug
        + Display
        + Integer
        + Signed
        + Roots
        + FromPrimitive
        + std::str::FromStr
        + Send
        + Sync
        + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer out of range for scalar backend"))
    }

    fn parse_exact(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: T = num
            .parse()
            .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
        let den: T = den
            .parse()
            .map_err(|_| format!("invalid rational denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Ratio::new(num, den))
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if n.clone() * n.clone() == *self.numer() && d.clone() * d.clone() == *self.denom() {
            Some(Ratio::new(n, d))
        } else {
            None
        }
    }

    fn is_integral(&self) -> bool {
        Ratio::is_integer(self)
    }
}
