//! The q-quadratic lattice `x(s) = c1 q^s + c2 q^{-s} + c3`.
//!
//! Half-integer arguments are passed as `two_s = 2s`; `q^{s}` is then `v^{two_s}` with `v = q^{1/2}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{div, powi, Scalar};

/// The deformation parameter, stored through its square root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QBase<T> {
    v: T,
    q: T,
}

impl<T: Scalar> QBase<T> {
    /// Requires `0 < v < 1`.
    pub fn from_sqrt(v: T) -> Result<Self> {
        if !(v > T::zero() && v < T::one()) {
            return Err(Error::InvalidParameter(format!(
                "v = q^(1/2) must satisfy 0 < v < 1, got {v}"
            )));
        }
        let q = v.clone() * &v;
        Ok(QBase { v, q })
    }

    /// Requires a representable square root of `q`.
    pub fn from_q(q: T) -> Result<Self> {
        let v = q.sqrt_repr().ok_or_else(|| {
            Error::InvalidParameter(format!("q = {q} has no representable square root"))
        })?;
        Self::from_sqrt(v)
    }

    pub fn v(&self) -> &T {
        &self.v
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// `q^k`.
    pub fn pow(&self, k: i64) -> T {
        powi(&self.q, k).expect("q is nonzero")
    }

    /// `q^{two_k/2}`.
    pub fn half_pow(&self, two_k: i64) -> T {
        powi(&self.v, two_k).expect("v is nonzero")
    }
}

/// Lattice coefficients over a base.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lattice<T> {
    pub base: QBase<T>,
    pub c1: T,
    pub c2: T,
    pub c3: T,
}

impl<T: Scalar> Lattice<T> {
    pub fn new(base: QBase<T>, c1: T, c2: T, c3: T) -> Self {
        Lattice { base, c1, c2, c3 }
    }

    /// `x(s) = q^{-s} + c1 q^s`.
    pub fn qracah(base: QBase<T>, c1: T) -> Self {
        Self::new(base, c1, T::one(), T::zero())
    }

    pub fn q(&self) -> &T {
        self.base.q()
    }

    /// `x(two_s / 2)`.
    pub fn x(&self, two_s: i64) -> T {
        self.c1.clone() * &self.base.half_pow(two_s)
            + self.c2.clone() * &self.base.half_pow(-two_s)
            + &self.c3
    }

    /// `x(s)` at integer `s`.
    pub fn at(&self, s: i64) -> T {
        self.x(2 * s)
    }

    /// `Δx(s) = (q^{-1} - 1) q^{-s} (c2 - c1 q^{2s+1})`.
    pub fn delta_x(&self, s: i64) -> T {
        (self.base.pow(-1) - T::one())
            * &self.base.pow(-s)
            * &(self.c2.clone() - &(self.c1.clone() * &self.base.pow(2 * s + 1)))
    }

    /// `∇x(s) = Δx(s-1)`.
    pub fn nabla_x(&self, s: i64) -> T {
        self.delta_x(s - 1)
    }

    /// `x(s+1/2) - x(s-1/2)`.
    pub fn delta_x_half(&self, s: i64) -> T {
        self.x(2 * s + 1) - self.x(2 * s - 1)
    }

    /// Errors unless `x(0), ..., x(n)` are pairwise distinct.
    pub fn check_injective(&self, n: usize) -> Result<()> {
        let xs: Vec<T> = (0..=n as i64).map(|s| self.at(s)).collect();
        for i in 0..xs.len() {
            for j in 0..i {
                if xs[i] == xs[j] {
                    return Err(Error::NotInjective(j as i64, i as i64));
                }
            }
        }
        Ok(())
    }

    /// `(f(s+1) - f(s)) / Δx(s)`.
    pub fn fwd_quot<F>(&self, f: F, s: i64) -> Result<T>
    where
        F: Fn(i64) -> Result<T>,
    {
        let dx = self.delta_x(s);
        if dx.is_zero() {
            return Err(Error::ZeroIncrement(s));
        }
        div(&(f(s + 1)? - &f(s)?), &dx, "forward quotient")
    }

    /// `(f(s) - f(s-1)) / ∇x(s)`.
    pub fn bwd_quot<F>(&self, f: F, s: i64) -> Result<T>
    where
        F: Fn(i64) -> Result<T>,
    {
        let dx = self.nabla_x(s);
        if dx.is_zero() {
            return Err(Error::ZeroIncrement(s));
        }
        div(&(f(s)? - &f(s - 1)?), &dx, "backward quotient")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn lat() -> Lattice<Rational> {
        Lattice::qracah(QBase::from_sqrt(r(1, 2)).unwrap(), r(1, 3) * r(1, 4))
    }

    #[test]
    fn base_bounds() {
        assert!(QBase::from_sqrt(r(1, 1)).is_err());
        assert!(QBase::from_sqrt(r(0, 1)).is_err());
        assert_eq!(QBase::from_q(r(9, 16)).unwrap().v(), &r(3, 4));
        assert!(QBase::from_q(r(1, 2)).is_err());
    }

    #[test]
    fn values() {
        let l = lat();
        assert_eq!(l.at(0), r(1, 1) + r(1, 12));
        assert_eq!(l.x(1), r(2, 1) + r(1, 12) * r(1, 2));
        assert_eq!(l.at(2), r(16, 1) + r(1, 192));
    }

    #[test]
    fn delta_closed_form() {
        let l = lat();
        for s in -1..=5 {
            assert_eq!(l.delta_x(s), l.at(s + 1) - l.at(s));
            assert_eq!(l.nabla_x(s + 1), l.delta_x(s));
            assert_eq!(l.delta_x_half(s), l.x(2 * s + 1) - l.x(2 * s - 1));
        }
        let expect = r(4, 1) * (r(1, 1) - r(1, 3) * r(1, 256)) * r(3, 1);
        assert_eq!(l.delta_x(1), expect);
    }

    #[test]
    fn zero_increment_is_not_injective() {
        // c1 = q^{-1} makes x(0) = x(1).
        let base = QBase::from_sqrt(r(1, 2)).unwrap();
        let l = Lattice::qracah(base, r(4, 1));
        assert!(l.delta_x(0).is_zero());
        assert_eq!(l.check_injective(3), Err(Error::NotInjective(0, 1)));
        assert_eq!(l.fwd_quot(|s| Ok(l.at(s)), 0), Err(Error::ZeroIncrement(0)));
    }

    #[test]
    fn quotients() {
        let l = lat();
        assert_eq!(l.fwd_quot(|_| Ok(r(7, 1)), 2).unwrap(), Rational::zero());
        assert_eq!(l.fwd_quot(|s| Ok(l.at(s)), 2).unwrap(), Rational::one());
        assert_eq!(l.bwd_quot(|s| Ok(l.at(s)), 2).unwrap(), Rational::one());
        let sq = |s| Ok(l.at(s) * l.at(s));
        assert_eq!(l.fwd_quot(sq, 1).unwrap(), l.at(2) + l.at(1));
    }
}
