//! A scalar wrapper that counts multiplications.
//!
//! The counter is thread-local, so benchmark cases running on different
//! threads never see each other's counts.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use vanderkit_core::{Result, Scalar};

thread_local! {
    static MULTIPLICATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Zeroes this thread's counter.
pub fn reset() {
    MULTIPLICATIONS.with(|c| c.set(0));
}

/// Multiplications performed on this thread since the last [`reset`].
pub fn count() -> u64 {
    MULTIPLICATIONS.with(Cell::get)
}

/// Runs `f` with a fresh counter and returns its result with the count.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, u64) {
    reset();
    let out = f();
    (out, count())
}

#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Counted<S>(pub S);

impl<S: fmt::Display> fmt::Display for Counted<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<S: Scalar> Add for Counted<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Counted(self.0 + rhs.0)
    }
}

impl<S: Scalar> Sub for Counted<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Counted(self.0 - rhs.0)
    }
}

impl<S: Scalar> Mul for Counted<S> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        MULTIPLICATIONS.with(|c| c.set(c.get() + 1));
        Counted(self.0 * rhs.0)
    }
}

impl<S: Scalar> Neg for Counted<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Counted(-self.0)
    }
}

impl<S: Scalar> Scalar for Counted<S> {
    const EXACT: bool = S::EXACT;

    fn zero() -> Self {
        Counted(S::zero())
    }

    fn one() -> Self {
        Counted(S::one())
    }

    fn from_i64(n: i64) -> Self {
        Counted(S::from_i64(n))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.0.checked_div(&rhs.0).map(Counted)
    }

    fn abs(&self) -> Self {
        Counted(self.0.abs())
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }

    fn separated_from(&self, other: &Self, tol: f64) -> bool {
        self.0.separated_from(&other.0, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_only_multiplications() {
        let (v, n) = measure(|| {
            let a = Counted(2.0) * Counted(3.0);
            let b = a.clone() + Counted(1.0) - Counted(0.5);
            b * a
        });
        assert_eq!(v.0, 6.5 * 6.0);
        assert_eq!(n, 2);
    }

    #[test]
    fn counters_are_per_thread() {
        reset();
        let _ = Counted(1.0) * Counted(1.0);
        let other = std::thread::spawn(|| {
            reset();
            count()
        })
        .join()
        .unwrap();
        assert_eq!(other, 0);
        assert_eq!(count(), 1);
    }
}
