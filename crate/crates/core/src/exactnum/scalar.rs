use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;
use crate::error::{Error, Result};

/// Field operations shared by exact rationals and `f64`.
///
/// Division is only available through [`Scalar::checked_div`]; for `f64` a zero divisor means
/// an exact `0.0`.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    /// Square root when it is representable (exactly, for rationals).
    fn sqrt_repr(&self) -> Option<Self>;
    /// `true` for types whose arithmetic is exact.
    fn is_exact() -> bool;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Rational::checked_div(self, rhs)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn abs(&self) -> Self {
        Rational::abs(self)
    }
    fn sqrt_repr(&self) -> Option<Self> {
        self.sqrt_exact()
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt_repr(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn is_exact() -> bool {
        false
    }
}

/// `a / b`, naming `what` on a zero divisor.
pub fn div<T: Scalar>(a: &T, b: &T, what: &'static str) -> Result<T> {
    a.checked_div(b).ok_or(Error::DivisionByZero(what))
}

/// `base^e` for any integer exponent; a zero base with negative exponent is an error.
pub fn powi<T: Scalar>(base: &T, e: i64) -> Result<T> {
    let mut acc = T::one();
    let mut b = base.clone();
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * &b;
        }
        k >>= 1;
        if k > 0 {
            b = b.clone() * &b;
        }
    }
    if e < 0 {
        div(&T::one(), &acc, "negative power")
    } else {
        Ok(acc)
    }
}

/// Product of a slice; empty product is one.
pub fn product<T: Scalar>(xs: &[T]) -> T {
    xs.iter().fold(T::one(), |acc, x| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_both_signs() {
        let h = Rational::new(1, 2).unwrap();
        assert_eq!(powi(&h, 3).unwrap(), Rational::new(1, 8).unwrap());
        assert_eq!(powi(&h, -3).unwrap(), Rational::from_integer(8));
        assert_eq!(powi(&h, 0).unwrap(), Rational::one());
        assert!(powi(&Rational::zero(), -1).is_err());
        assert_eq!(powi(&2.0f64, -2).unwrap(), 0.25);
    }

    #[test]
    fn f64_zero_division() {
        assert!(div(&1.0f64, &0.0, "t").is_err());
        assert_eq!(div(&1.0f64, &4.0, "t").unwrap(), 0.25);
    }
}
