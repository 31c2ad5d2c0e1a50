use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational. Always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `num/den`; errors on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero("Rational::new"));
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Self::one().checked_div(self)
    }

    /// Integer power; negative exponents of zero yield `None`.
    pub fn pow(&self, e: i32) -> Option<Self> {
        if e < 0 && self.is_zero() {
            return None;
        }
        Some(Rational(num_traits::Pow::pow(&self.0, e)))
    }

    /// Exact square root when both numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Nearest `f64`; saturates to ±inf for out-of-range magnitudes.
    pub fn to_f64(&self) -> f64 {
        if let Some(f) = self.0.to_f64() {
            if f.is_finite() && (f != 0.0 || self.is_zero()) {
                return f;
            }
        }
        // Scale numerator and denominator to a common bit budget.
        let nb = self.numer().bits() as i64;
        let db = self.denom().bits() as i64;
        let shift = nb - db;
        let num = if shift < 0 {
            self.numer() << ((-shift) as usize)
        } else {
            self.numer().clone()
        };
        let den = if shift > 0 {
            self.denom() << (shift as usize)
        } else {
            self.denom().clone()
        };
        let mant = BigRational::new(num, den).to_f64().unwrap_or(f64::NAN);
        mant * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64_exact(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Rational)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional leading sign; result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero("Rational::from_str"));
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, rhs: Rational) {
                self.0.$am(rhs.0)
            }
        }
        impl<'a> $atr<&'a Rational> for Rational {
            fn $am(&mut self, rhs: &'a Rational) {
                self.0.$am(&rhs.0)
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

macro_rules! divop {
    ($l:ty, $r:ty) => {
        /// Panics on a zero divisor, like integer division; prefer [`Rational::checked_div`].
        impl<'a> Div<$r> for $l {
            type Output = Rational;
            fn div(self, rhs: $r) -> Rational {
                #[allow(clippy::needless_borrow)]
                (&self).checked_div(&rhs).expect("rational division by zero")
            }
        }
    };
}

divop!(Rational, Rational);
divop!(Rational, &'a Rational);
divop!(&'a Rational, Rational);
divop!(&'a Rational, &'a Rational);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.denom().is_one() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer((*other).into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(r("2/4").to_string(), "1/2");
        assert_eq!(r("6/3").to_string(), "2");
        assert_eq!(r("3/-9").to_string(), "-1/3");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn division_by_zero_is_none() {
        assert!(r("1/2").checked_div(&Rational::zero()).is_none());
        assert!(Rational::zero().recip().is_none());
        assert!(Rational::zero().pow(-1).is_none());
        assert_eq!(r("2/3").pow(-2).unwrap(), r("9/4"));
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(r("9/16").sqrt_exact(), Some(r("3/4")));
        assert_eq!(r("1/2").sqrt_exact(), None);
    }

    #[test]
    fn huge_to_f64() {
        let big = r("1").checked_div(&r("4").pow(700).unwrap()).unwrap();
        assert_eq!(big.to_f64(), 0.0);
        let x = r("3").pow(800).unwrap().checked_div(&r("3").pow(799).unwrap()).unwrap();
        assert_eq!(x.to_f64(), 3.0);
        let y = Rational::from_big(BigRational::new(
            BigInt::from(10).pow(400) + 1u32,
            BigInt::from(10).pow(400) * 7u32,
        ));
        assert!((y.to_f64() - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn serde_as_string() {
        let v = serde_json::to_string(&r("-5/7")).unwrap();
        assert_eq!(v, "\"-5/7\"");
        let back: Rational = serde_json::from_str(&v).unwrap();
        assert_eq!(back, r("-5/7"));
    }
}
