//! Reproducing kernels `K_m(s,t) = Σ_{k≤m} P_k(s) P_k(t) / d_k^2`.
//!
//! The sum works for any [`OrthogonalFamily`]. The compact endpoint forms
//! `K_{n-1}(s,0) = ϰ0 R_{n-1}(s) + ϰ̄0 ∇R_{n-1}(s)/∇x(s)` and
//! `K_{n-1}(s,N) = ϰN R_{n-1}(s) + ϰ̄N ΔR_{n-1}(s)/Δx(s)` are q-Racah specific.

use crate::error::{Error, Result};
use crate::exactnum::{div, powi, qpochhammer_multi, Scalar};
use crate::family::OrthogonalFamily;
use crate::qracah::{QRacah, Truncation};

/// `K_m(s,t)`.
pub fn kernel_sum<T: Scalar, F: OrthogonalFamily<T> + ?Sized>(
    fam: &F,
    m: usize,
    s: i64,
    t: i64,
) -> Result<T> {
    let mut acc = T::zero();
    for k in 0..=m {
        let term = fam.eval(k, s)? * &fam.eval(k, t)?;
        acc = acc + &div(&term, &fam.d2(k)?, "kernel sum")?;
    }
    Ok(acc)
}

/// `K_{n-1}(s,t)`, zero for `n = 0`.
pub fn kernel_prev<T: Scalar, F: OrthogonalFamily<T> + ?Sized>(
    fam: &F,
    n: usize,
    s: i64,
    t: i64,
) -> Result<T> {
    if n == 0 {
        Ok(T::zero())
    } else {
        kernel_sum(fam, n - 1, s, t)
    }
}

/// Christoffel-Darboux: `(P_{n+1}(s1)P_n(s2) - P_{n+1}(s2)P_n(s1)) / (d_n^2 (x(s1) - x(s2)))`.
pub fn kernel_cd<T: Scalar, F: OrthogonalFamily<T> + ?Sized>(
    fam: &F,
    n: usize,
    s1: i64,
    s2: i64,
) -> Result<T> {
    if n + 1 > fam.degree_max() {
        return Err(Error::DegreeOutOfRange {
            n: n + 1,
            max: fam.degree_max(),
        });
    }
    let dx = fam.node(s1) - &fam.node(s2);
    if dx.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "kernel_cd needs distinct abscissae (x({s1}) = x({s2}))"
        )));
    }
    let num = fam.eval(n + 1, s1)? * &fam.eval(n, s2)? - &(fam.eval(n + 1, s2)? * &fam.eval(n, s1)?);
    div(&num, &(fam.d2(n)? * &dx), "Christoffel-Darboux")
}

/// Coefficients of the compact endpoint kernel forms for the q-Racah family.
#[derive(Debug, Clone, Copy)]
pub struct KernelCoeffs<'a, T> {
    fam: &'a QRacah<T>,
}

impl<'a, T: Scalar> KernelCoeffs<'a, T> {
    pub fn new(fam: &'a QRacah<T>) -> Self {
        KernelCoeffs { fam }
    }

    fn qp(&self, k: i64) -> T {
        self.fam.params().q_pow(k)
    }

    fn om(&self, c: &T, k: i64) -> T {
        T::one() - &(c.clone() * &self.qp(k))
    }

    /// `1 / ((1 - αβq^{2n-1}) d_{n-1}^2)`.
    fn common(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Err(Error::DegreeOutOfRange { n, max: self.fam.params().n });
        }
        let p = self.fam.params();
        let den = self.om(&p.ab(), 2 * n as i64 - 1) * &self.fam.d2(n - 1)?;
        div(&T::one(), &den, "compact kernel coefficient")
    }

    /// `ϰ0(s,n) = R_{n-1}(0)(1-αβq^n)(1-δγq^{s+n}) / ((1-αβq^{2n-1}) d_{n-1}^2 (1-δγq^{s+1}))`.
    pub fn kappa0(&self, s: i64, n: usize) -> Result<T> {
        let p = self.fam.params();
        let k = n as i64;
        let num = self.fam.boundary_0(n - 1)? * &self.om(&p.ab(), k) * &self.om(&p.dg(), s + k);
        Ok(div(&num, &self.om(&p.dg(), s + 1), "kappa0")? * &self.common(n)?)
    }

    /// `ϰ̄0(s,n) = R_{n-1}(0)(q-1)q^{n-s}(δq^s-1)(γq^s-β)(δγq^s-α) / ((1-δγq^{s+1})(1-αβq^{2n-1}) d_{n-1}^2)`.
    ///
    /// Equals `R_{n-1}(0) σ(s) / (ᾱ_{n-1} d_{n-1}^2 (x(s) - x(0)))` away from `s = 0`; it does not
    /// vanish at `s = 0`.
    pub fn kappa0_bar(&self, s: i64, n: usize) -> Result<T> {
        let p = self.fam.params();
        let k = n as i64;
        let qs = self.qp(s);
        let num = self.fam.boundary_0(n - 1)?
            * &(p.q().clone() - &T::one())
            * &self.qp(k - s)
            * &(p.delta.clone() * &qs - &T::one())
            * &(p.gamma.clone() * &qs - &p.beta)
            * &(p.dg() * &qs - &p.alpha);
        Ok(div(&num, &self.om(&p.dg(), s + 1), "kappa0_bar")? * &self.common(n)?)
    }

    /// `ϰN(s,n) = R_{n-1}(N) q^{n-1}(1-αβq^n)(1-δγq^{s+N+2-n}) / ((1-αβq^{2n-1}) d_{n-1}^2 (1-δγq^{s+N+1}))`.
    pub fn kappa_n(&self, s: i64, n: usize) -> Result<T> {
        let p = self.fam.params();
        let k = n as i64;
        let big = p.n as i64;
        let num = self.fam.boundary_n(n - 1)?
            * &self.qp(k - 1)
            * &self.om(&p.ab(), k)
            * &self.om(&p.dg(), s + big + 2 - k);
        Ok(div(&num, &self.om(&p.dg(), s + big + 1), "kappaN")? * &self.common(n)?)
    }

    /// `ϰ̄N(s,n) = R_{n-1}(N)(1-q)q^{n-2-s} Π'(s) / ((1-δγq^{s+N+1})(1-αβq^{2n-1}) d_{n-1}^2)`,
    /// where `Π'(s)` is `(1-δγq^{s+1})` times the two non-truncated factors among
    /// `(1-αq^{s+1})`, `(1-βδq^{s+1})`, `(1-γq^{s+1})`.
    pub fn kappa_n_bar(&self, s: i64, n: usize) -> Result<T> {
        let p = self.fam.params();
        let k = n as i64;
        let big = p.n as i64;
        let bd = p.beta.clone() * &p.delta;
        let mut pi = self.om(&p.dg(), s + 1);
        if p.truncation != Truncation::AlphaQ {
            pi = pi * &self.om(&p.alpha, s + 1);
        }
        if p.truncation != Truncation::BetaDeltaQ {
            pi = pi * &self.om(&bd, s + 1);
        }
        if p.truncation != Truncation::GammaQ {
            pi = pi * &self.om(&p.gamma, s + 1);
        }
        let num = self.fam.boundary_n(n - 1)? * &(T::one() - p.q()) * &self.qp(k - 2 - s) * &pi;
        Ok(div(&num, &self.om(&p.dg(), s + big + 1), "kappaN_bar")? * &self.common(n)?)
    }

    /// The four coefficients exactly as they are commonly displayed in closed form; kept to
    /// document that they do not reproduce the kernel (see [`KernelCoeffs::kappa0`] et al.).
    pub fn displayed(&self, s: i64, n: usize) -> Result<[T; 4]> {
        let p = self.fam.params();
        let q = p.q();
        let ab = p.ab();
        let dg = p.dg();
        let k = n as i64;
        let m = n - 1;
        let up = qpochhammer_multi(&[ab.clone() * q, ab.clone() * &self.qp(k + 1)], q, m);
        let low0 = qpochhammer_multi(
            &[
                q.clone(),
                div(&(ab.clone() * q), &p.gamma, "displayed kernel")?,
                div(&(p.alpha.clone() * q), &p.delta, "displayed kernel")?,
                p.beta.clone() * q,
            ],
            q,
            m,
        );
        let qs = self.qp(s);
        let k0 = div(
            &(powi(&(dg.clone() * q), -k + 1)? * &self.om(&ab, k) * &self.om(&dg, s + k) * &up),
            &(self.om(&ab, 1) * &self.om(&dg, s + 1) * &low0),
            "displayed kappa0",
        )?;
        let dinv = div(&T::one(), &p.delta, "displayed kernel")?;
        let k0b = div(
            &(self.qp(2 - s)
                * &powi(&dg, -k + 3)?
                * &up
                * &(qs.clone() - &T::one())
                * &(qs.clone() - &dinv)
                * &(qs.clone() - &div(&p.beta, &p.gamma, "displayed kernel")?)
                * &(qs.clone() - &div(&p.alpha, &dg, "displayed kernel")?)),
            &(self.om(&ab, 1) * &self.om(&dg, 2 * s + 2) * &low0),
            "displayed kappa0_bar",
        )?;
        let bdinv = div(&T::one(), &(p.beta.clone() * &p.delta), "displayed kernel")?;
        let lown = qpochhammer_multi(
            &[
                bdinv * &self.qp(-k),
                p.alpha.clone() * q,
                p.beta.clone() * &p.delta * q,
                q.clone(),
                div(&(ab.clone() * q), &p.gamma, "displayed kernel")?,
            ],
            q,
            m,
        );
        let g1 = powi(&p.gamma, -k + 1)?;
        let kn = div(
            &(g1.clone() * &self.om(&ab, k) * &self.om(&p.delta, s - k + 1) * &up),
            &((T::one() - &ab) * &self.om(&p.delta, s) * &lown),
            "displayed kappaN",
        )?;
        let pi4 = self.om(&p.alpha, s + 1)
            * &self.om(&(p.beta.clone() * &p.delta), s + 1)
            * &self.om(&p.gamma, s + 1)
            * &self.om(&dg, s + 1);
        let knb = div(
            &(g1 * &self.qp(-s) * &pi4 * &up),
            &(self.om(&ab, 1) * &self.om(&dg, 2 * s + 2) * &lown),
            "displayed kappaN_bar",
        )?;
        Ok([k0, k0b, kn, knb])
    }
}

/// `K_{n-1}(s,0)` via the compact form; the backward quotient at `s = 0` reads `R_{n-1}(x(-1))`.
pub fn kernel_at0_compact<T: Scalar>(fam: &QRacah<T>, n: usize, s: i64) -> Result<T> {
    let c = KernelCoeffs::new(fam);
    let lat = fam.lattice();
    let r = |t: i64| fam.eval_hyper(n - 1, t);
    Ok(c.kappa0(s, n)? * &r(s)? + &(c.kappa0_bar(s, n)? * &lat.bwd_quot(r, s)?))
}

/// `K_{n-1}(s,N)` via the compact form; the forward quotient at `s = N` reads `R_{n-1}(x(N+1))`.
pub fn kernel_at_n_compact<T: Scalar>(fam: &QRacah<T>, n: usize, s: i64) -> Result<T> {
    let c = KernelCoeffs::new(fam);
    let lat = fam.lattice();
    let r = |t: i64| fam.eval_hyper(n - 1, t);
    Ok(c.kappa_n(s, n)? * &r(s)? + &(c.kappa_n_bar(s, n)? * &lat.fwd_quot(r, s)?))
}

/// Same as [`kernel_at0_compact`] but with the displayed coefficients.
pub fn kernel_at0_displayed<T: Scalar>(fam: &QRacah<T>, n: usize, s: i64) -> Result<T> {
    let [k0, k0b, _, _] = KernelCoeffs::new(fam).displayed(s, n)?;
    let r = |t: i64| fam.eval_hyper(n - 1, t);
    Ok(k0 * &r(s)? + &(k0b * &fam.lattice().bwd_quot(r, s)?))
}

/// Same as [`kernel_at_n_compact`] but with the displayed coefficients.
pub fn kernel_at_n_displayed<T: Scalar>(fam: &QRacah<T>, n: usize, s: i64) -> Result<T> {
    let [_, _, kn, knb] = KernelCoeffs::new(fam).displayed(s, n)?;
    let r = |t: i64| fam.eval_hyper(n - 1, t);
    Ok(kn * &r(s)? + &(knb * &fam.lattice().fwd_quot(r, s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::lattice::QBase;
    use crate::qracah::{RacahInput, RacahParams};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn families() -> Vec<QRacah<Rational>> {
        let b2 = QBase::from_sqrt(r(1, 2)).unwrap();
        let b3 = QBase::from_sqrt(r(1, 3)).unwrap();
        let mk = |b: &QBase<Rational>, a, g, d, t| {
            QRacah::new(
                RacahParams::new(b.clone(), RacahInput { alpha: a, beta: r(1, 7), gamma: g, delta: d }, 4, t)
                    .unwrap(),
            )
        };
        vec![
            mk(&b2, Some(r(1, 5)), None, Some(r(1, 3)), Truncation::GammaQ),
            mk(&b2, None, Some(r(3, 11)), Some(r(1, 3)), Truncation::AlphaQ),
            mk(&b3, Some(r(2, 5)), Some(r(3, 11)), None, Truncation::BetaDeltaQ),
        ]
    }

    #[test]
    fn degree_zero_kernel_is_one() {
        let f = &families()[0];
        assert_eq!(kernel_sum(f, 0, 1, 3).unwrap(), Rational::one());
        assert_eq!(kernel_cd(f, 0, 1, 3).unwrap(), Rational::one());
    }

    #[test]
    fn sum_equals_christoffel_darboux() {
        for f in families() {
            for m in 0..4 {
                for s in 0..=4 {
                    for t in 0..=4 {
                        let k = kernel_sum(&f, m, s, t).unwrap();
                        assert_eq!(k, kernel_sum(&f, m, t, s).unwrap());
                        if s != t {
                            assert_eq!(k, kernel_cd(&f, m, s, t).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compact_forms_all_truncations() {
        for f in families() {
            for n in 1..=4 {
                for s in 0..=4 {
                    assert_eq!(kernel_at0_compact(&f, n, s).unwrap(), kernel_sum(&f, n - 1, s, 0).unwrap());
                    assert_eq!(kernel_at_n_compact(&f, n, s).unwrap(), kernel_sum(&f, n - 1, s, 4).unwrap());
                }
            }
        }
    }

    #[test]
    fn compact_forms_degree_one_constant() {
        let f = &families()[0];
        for s in 0..=4 {
            assert_eq!(kernel_at0_compact(f, 1, s).unwrap(), Rational::one());
            assert_eq!(kernel_at_n_compact(f, 1, s).unwrap(), Rational::one());
        }
    }

    #[test]
    fn kappa0_bar_is_nonzero_at_origin() {
        let f = &families()[0];
        let c = KernelCoeffs::new(f);
        assert!(!c.kappa0_bar(0, 2).unwrap().is_zero());
    }

    #[test]
    fn kappa0_bar_matches_sigma_quotient() {
        for f in families() {
            let c = KernelCoeffs::new(&f);
            for n in 1..=4usize {
                for s in 1..=4i64 {
                    let gap = f.lattice().at(s) - f.lattice().at(0);
                    let expect = f.boundary_0(n - 1).unwrap() * f.sigma(s)
                        / (f.alpha_bar(n - 1) * f.d2(n - 1).unwrap() * gap);
                    assert_eq!(c.kappa0_bar(s, n).unwrap(), expect);
                }
                for s in 0..4i64 {
                    let gap = f.lattice().at(s) - f.lattice().at(4);
                    let expect = f.boundary_n(n - 1).unwrap() * f.phi_big(s)
                        / (f.alpha_hat(n - 1) * f.d2(n - 1).unwrap() * gap);
                    assert_eq!(c.kappa_n_bar(s, n).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn displayed_coefficients_disagree() {
        let f = &families()[0];
        let mut mismatches = 0;
        for n in 2..=4 {
            for s in 1..4 {
                if kernel_at0_displayed(f, n, s).unwrap() != kernel_sum(f, n - 1, s, 0).unwrap() {
                    mismatches += 1;
                }
            }
        }
        assert!(mismatches > 0);
    }
}
