//! q-Hahn polynomials on the exponential lattice `μ(s) = q^{-s}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{basic_hyper_terminating, div, powi, qpochhammer, qpochhammer_multi, HyperSpec, Scalar};
use crate::family::OrthogonalFamily;
use crate::lattice::{Lattice, QBase};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QHahnParams<T> {
    pub base: QBase<T>,
    pub mu: T,
    pub nu: T,
    pub n: usize,
}

impl<T: Scalar> QHahnParams<T> {
    pub fn new(base: QBase<T>, mu: T, nu: T, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        if mu.is_zero() || nu.is_zero() {
            return Err(Error::InvalidParameter("mu and nu must be nonzero".into()));
        }
        let p = QHahnParams { base, mu, nu, n };
        let q = p.base.q().clone();
        let mn = p.mu.clone() * &p.nu;
        for k in 1..=(2 * n as i64 + 2) {
            if mn.clone() * &p.base.pow(k) == T::one() {
                return Err(Error::InvalidParameter(format!("mu*nu*q^{k} = 1")));
            }
        }
        if qpochhammer(&(p.nu.clone() * &q), &q, n).is_zero() {
            return Err(Error::InvalidParameter("(nu q; q)_k vanishes for some k <= N".into()));
        }
        let r = div(&p.base.pow(-(n as i64)), &p.mu, "q^{-N}/mu")?;
        if qpochhammer(&r, &q, n).is_zero() {
            return Err(Error::InvalidParameter("(q^{-N}/mu; q)_s vanishes on 0..N".into()));
        }
        Ok(p)
    }

    pub fn lattice(&self) -> Lattice<T> {
        Lattice::new(self.base.clone(), T::zero(), T::one(), T::zero())
    }
}

#[derive(Debug, Clone)]
pub struct QHahn<T> {
    p: QHahnParams<T>,
    lat: Lattice<T>,
    total: T,
}

impl<T: Scalar> QHahn<T> {
    pub fn new(p: QHahnParams<T>) -> Result<Self> {
        let lat = p.lattice();
        let mut f = QHahn { p, lat, total: T::one() };
        let mut total = T::zero();
        for s in 0..=f.p.n as i64 {
            total = total + &f.weight_unnormalized(s)?;
        }
        if total.is_zero() {
            return Err(Error::DivisionByZero("q-Hahn total weight"));
        }
        f.total = total;
        Ok(f)
    }

    pub fn params(&self) -> &QHahnParams<T> {
        &self.p
    }

    fn qp(&self, k: i64) -> T {
        self.p.base.pow(k)
    }

    /// `(νq;q)_n (q^{-N};q)_n / (μνq^{n+1};q)_n 3φ2(q^{-n}, μνq^{n+1}, q^{-s}; νq, q^{-N} | q; q)`.
    pub fn eval_hyper(&self, n: usize, s: i64) -> Result<T> {
        self.check_degree(n)?;
        let p = &self.p;
        let q = p.base.q().clone();
        let k = n as i64;
        let mn = p.mu.clone() * &p.nu;
        let lower = vec![p.nu.clone() * &q, self.qp(-(p.n as i64))];
        let pref = div(
            &qpochhammer_multi(&lower, &q, n),
            &qpochhammer(&(mn.clone() * &self.qp(k + 1)), &q, n),
            "q-Hahn prefactor",
        )?;
        let spec = HyperSpec::at_q(vec![self.qp(-k), mn * &self.qp(k + 1), self.qp(-s)], lower, q, n + 1);
        Ok(pref * &basic_hyper_terminating(&spec)?)
    }

    /// `(νq, q^{-N}; q)_s / (q, μ^{-1}q^{-N}; q)_s (μνq)^{-s}`.
    pub fn weight_unnormalized(&self, s: i64) -> Result<T> {
        self.check_node(s)?;
        let p = &self.p;
        let q = p.base.q();
        let big = p.n as i64;
        let r = div(&self.qp(-big), &p.mu, "q^{-N}/mu")?;
        div(
            &qpochhammer_multi(&[p.nu.clone() * q, self.qp(-big)], q, s as usize),
            &(qpochhammer_multi(&[q.clone(), r], q, s as usize) * &powi(&(p.mu.clone() * &p.nu * q), s)?),
            "q-Hahn weight",
        )
    }

    /// Normalised weight; used directly as the node mass.
    pub fn weight(&self, s: i64) -> Result<T> {
        div(&self.weight_unnormalized(s)?, &self.total, "q-Hahn weight")
    }

    /// `(-νq)^n q^{n(n-1)/2 - Nn} (q, μq, νq, q^{-N}, μνq^{N+2}; q)_n / ((μνq^2; q)_{2n} (μνq^{n+1}; q)_n)`.
    pub fn d2_display(&self, n: usize) -> Result<T> {
        let p = &self.p;
        let q = p.base.q();
        let k = n as i64;
        let big = p.n as i64;
        let mn = p.mu.clone() * &p.nu;
        let num = powi(&(-(p.nu.clone() * q)), k)?
            * &self.qp(k * (k - 1) / 2 - big * k)
            * &qpochhammer_multi(
                &[q.clone(), p.mu.clone() * q, p.nu.clone() * q, self.qp(-big), mn.clone() * &self.qp(big + 2)],
                q,
                n,
            );
        let den = qpochhammer(&(mn.clone() * &self.qp(2)), q, 2 * n) * &qpochhammer(&(mn * &self.qp(k + 1)), q, n);
        div(&num, &den, "q-Hahn norm")
    }
}

impl<T: Scalar> OrthogonalFamily<T> for QHahn<T> {
    fn degree_max(&self) -> usize {
        self.p.n
    }

    fn node(&self, s: i64) -> T {
        self.lat.at(s)
    }

    fn eval(&self, n: usize, s: i64) -> Result<T> {
        self.eval_hyper(n, s)
    }

    fn d2(&self, n: usize) -> Result<T> {
        self.check_degree(n)?;
        self.d2_display(n)
    }

    fn mass(&self, s: i64) -> Result<T> {
        self.weight(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn fam() -> QHahn<Rational> {
        let base = QBase::from_sqrt(r(9, 10)).unwrap();
        QHahn::new(QHahnParams::new(base, r(1, 3), r(1, 5), 4).unwrap()).unwrap()
    }

    #[test]
    fn degree_zero_and_total() {
        let f = fam();
        assert_eq!(f.d2(0).unwrap(), Rational::one());
        for s in 0..=4 {
            assert_eq!(f.eval(0, s).unwrap(), Rational::one());
        }
    }

    #[test]
    fn orthogonal_with_displayed_norm() {
        let f = fam();
        for n in 0..=4 {
            for m in 0..=n {
                let acc = (0..=4).fold(Rational::zero(), |a, s| {
                    a + f.eval(n, s).unwrap() * f.eval(m, s).unwrap() * f.mass(s).unwrap()
                });
                let want = if n == m { f.d2(n).unwrap() } else { Rational::zero() };
                assert_eq!(acc, want);
            }
        }
    }
}
