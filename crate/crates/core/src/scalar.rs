//! The field over which nodes and matrix entries live.
//!
//! Two concrete semantics ship with the crate: [`Rational`] (arbitrary
//! precision, always in lowest terms) and `f64`. Anything else that
//! implements [`Scalar`] works with every routine in the crate; the
//! benchmark harness, for example, wraps `f64` in a type that counts
//! multiplications.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. `num_rational` keeps it canonical: the
/// numerator and denominator are coprime and the denominator is positive.
pub type Rational = num_rational::BigRational;

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact, so equality can be structural.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// Division that reports a zero divisor instead of producing NaN or infinity.
    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    fn abs(&self) -> Self;

    /// Nearest `f64`; used for norms, pivot ranking, and reporting.
    fn to_f64(&self) -> f64;

    /// Structural equality for exact scalars, `|a - b| <= tol` otherwise.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// Whether two node values count as distinct. Exact scalars ignore `tol`.
    fn separated_from(&self, other: &Self, tol: f64) -> bool;

    fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    fn powi(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// `n!` in this field.
    fn factorial(n: u32) -> Self {
        (2..=n as i64).fold(Self::one(), |acc, k| acc * Self::from_i64(k))
    }

    /// `n! / (n - k)!`, the coefficient picked up by differentiating `x^n` k times.
    fn falling_factorial(n: u32, k: u32) -> Self {
        debug_assert!(k <= n);
        ((n - k + 1) as i64..=n as i64).fold(Self::one(), |acc, f| acc * Self::from_i64(f))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn separated_from(&self, other: &Self, _tol: f64) -> bool {
        self != other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn abs(&self) -> Self {
        libm::fabs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        libm::fabs(self - other) <= tol
    }

    fn separated_from(&self, other: &Self, tol: f64) -> bool {
        libm::fabs(self - other) > tol
    }
}

/// Parses `"p"`, `"p/q"`, or a plain decimal such as `"-1.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if Zero::is_zero(&den) {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut digits = alloc::string::String::with_capacity(whole_digits.len() + frac.len());
        digits.push_str(whole_digits);
        digits.push_str(frac);
        let mut num: BigInt = digits.parse().ok()?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u8), frac.len());
        return Some(Rational::new(num, den));
    }
    let n: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(n))
}
