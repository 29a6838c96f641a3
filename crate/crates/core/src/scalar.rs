//! Scalar domains.
//!
//! Every structure in the crate is generic over [`Scalar`], a commutative
//! ring with exact equality. Three domains implement it:
//!
//! * [`Rational`]: arbitrary-precision rationals, the default exact path;
//! * [`ExpPoly`](crate::exppoly::ExpPoly): finite sums of `c·e^{r t}`, used
//!   for curves `t ↦ g_t`;
//! * `f64`: the cross-check path. Equality on `f64` is bitwise; tolerance
//!   comparisons are always explicit at the call site.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

/// A scalar domain with exact (or float) division.
pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn abs_value(&self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl FieldScalar for Rational {
    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl FieldScalar for f64 {
    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`; the result is in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let trimmed = s.trim();
    let parsed = Rational::from_str(trimmed)
        .map_err(|_| ParseError::Rational(s.to_string()))?;
    Ok(parsed)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Exact rational value of a finite binary64 number.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    FieldScalar::to_f64(q)
}
