//! Dual q-Hahn polynomials on `x(s) = q^{-s} + γδq^{s+1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{basic_hyper_terminating, div, powi, qpochhammer, qpochhammer_multi, HyperSpec, Scalar};
use crate::family::OrthogonalFamily;
use crate::lattice::{Lattice, QBase};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualQHahnParams<T> {
    pub lat: Lattice<T>,
    pub gamma: T,
    pub delta: T,
    pub n: usize,
}

impl<T: Scalar> DualQHahnParams<T> {
    pub fn new(base: QBase<T>, gamma: T, delta: T, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        if gamma.is_zero() {
            return Err(Error::InvalidParameter("gamma must be nonzero".into()));
        }
        let c1 = gamma.clone() * &delta * base.q();
        let p = DualQHahnParams { lat: Lattice::qracah(base, c1), gamma, delta, n };
        p.validate()?;
        Ok(p)
    }

    fn q(&self) -> &T {
        self.lat.q()
    }

    fn qp(&self, k: i64) -> T {
        self.lat.base.pow(k)
    }

    fn validate(&self) -> Result<()> {
        let q = self.q();
        let big = self.n;
        let gd = self.gamma.clone() * &self.delta;
        let den = qpochhammer_multi(&[q.clone(), gd.clone() * &self.qp(big as i64 + 2), self.delta.clone() * q], q, big)
            * &(T::one() - &(gd.clone() * q))
            * &qpochhammer(&(gd * &self.qp(2)), q, big);
        if den.is_zero() {
            return Err(Error::InvalidParameter("dual q-Hahn weight denominator vanishes on 0..N".into()));
        }
        if qpochhammer(&(self.gamma.clone() * q), q, big).is_zero() {
            return Err(Error::InvalidParameter("(gamma q; q)_k vanishes for some k <= N".into()));
        }
        self.lat.check_injective(big)
    }
}

#[derive(Debug, Clone)]
pub struct DualQHahn<T> {
    p: DualQHahnParams<T>,
}

impl<T: Scalar> DualQHahn<T> {
    pub fn new(p: DualQHahnParams<T>) -> Self {
        DualQHahn { p }
    }

    pub fn params(&self) -> &DualQHahnParams<T> {
        &self.p
    }

    /// `(q^{-N}, γq; q)_n 3φ2(q^{-n}, q^{-s}, δγq^{s+1}; q^{-N}, γq | q; q)`.
    pub fn eval_hyper(&self, n: usize, s: i64) -> Result<T> {
        self.check_degree(n)?;
        let p = &self.p;
        let q = p.q().clone();
        let big = p.n as i64;
        let lower = vec![p.qp(-big), p.gamma.clone() * &q];
        let pref = qpochhammer_multi(&lower, &q, n);
        let spec = HyperSpec::at_q(
            vec![p.qp(-(n as i64)), p.qp(-s), p.gamma.clone() * &p.delta * &p.qp(s + 1)],
            lower,
            q,
            n + 1,
        );
        Ok(pref * &basic_hyper_terminating(&spec)?)
    }

    /// `ρ(s)` as displayed; it is a probability measure against `Δx(s - 1/2)`.
    pub fn weight(&self, s: i64) -> Result<T> {
        self.check_node(s)?;
        let p = &self.p;
        let q = p.q();
        let big = p.n as i64;
        let (g, d) = (&p.gamma, &p.delta);
        let gd = g.clone() * d;
        let expo = big * s - s * (s - 1) / 2;
        let num = p.qp(expo)
            * &powi(&(g.clone() * q), big)?
            * &qpochhammer(&(d.clone() * q), q, p.n)
            * &qpochhammer_multi(&[g.clone() * q, gd.clone() * q, p.qp(-big)], q, s as usize);
        let den = powi(&(-g.clone()), s)?
            * &(T::one() - &(gd.clone() * q))
            * &(p.lat.base.half_pow(-1) - &p.lat.base.half_pow(1))
            * &qpochhammer(&(gd.clone() * &p.qp(2)), q, p.n)
            * &qpochhammer_multi(&[q.clone(), gd * &p.qp(big + 2), d.clone() * q], q, s as usize);
        div(&num, &den, "dual q-Hahn weight")
    }

    /// `d_n^2 = (γδq)^n (q, δ^{-1}q^{-N}, γq, q^{-N}; q)_n`.
    pub fn d2_display(&self, n: usize) -> Result<T> {
        let p = &self.p;
        let q = p.q();
        let big = p.n as i64;
        let dinv = div(&T::one(), &p.delta, "1/delta")?;
        Ok(powi(&(p.gamma.clone() * &p.delta * q), n as i64)?
            * &qpochhammer_multi(&[q.clone(), dinv * &p.qp(-big), p.gamma.clone() * q, p.qp(-big)], q, n))
    }
}

impl<T: Scalar> OrthogonalFamily<T> for DualQHahn<T> {
    fn degree_max(&self) -> usize {
        self.p.n
    }

    fn node(&self, s: i64) -> T {
        self.p.lat.at(s)
    }

    fn eval(&self, n: usize, s: i64) -> Result<T> {
        self.eval_hyper(n, s)
    }

    fn d2(&self, n: usize) -> Result<T> {
        self.check_degree(n)?;
        self.d2_display(n)
    }

    fn mass(&self, s: i64) -> Result<T> {
        Ok(self.weight(s)? * &self.p.lat.delta_x_half(s))
    }
}
