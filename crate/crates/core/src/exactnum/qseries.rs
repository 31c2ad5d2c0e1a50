use super::scalar::{div, Scalar};
use crate::error::{Error, Result};

/// `(a;q)_k = (1-a)(1-aq)...(1-aq^{k-1})`.
pub fn qpochhammer<T: Scalar>(a: &T, q: &T, k: usize) -> T {
    let mut acc = T::one();
    let mut aq = a.clone();
    for _ in 0..k {
        acc = acc * &(T::one() - &aq);
        aq = aq * q;
    }
    acc
}

/// `(a1,...,ar;q)_k`, the product of the individual symbols.
pub fn qpochhammer_multi<T: Scalar>(params: &[T], q: &T, k: usize) -> T {
    params
        .iter()
        .fold(T::one(), |acc, a| acc * &qpochhammer(a, q, k))
}

/// Floating approximation of `(a;q)_inf`.
///
/// Factors are multiplied in until `|a q^k| < tol`.
pub fn qpochhammer_inf_approx(a: f64, q: f64, tol: f64) -> Result<f64> {
    if !(q.abs() < 1.0) {
        return Err(Error::NonConvergent);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let mut acc = 1.0;
    let mut term = a;
    while term.abs() >= tol {
        acc *= 1.0 - term;
        term *= q;
    }
    Ok(acc)
}

/// A terminating basic hypergeometric series with `terms` summands.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSpec<T> {
    pub upper: Vec<T>,
    pub lower: Vec<T>,
    pub base: T,
    pub argument: T,
    pub terms: usize,
}

impl<T: Scalar> HyperSpec<T> {
    /// Series with argument `z = q`, the shape used by every family here.
    pub fn at_q(upper: Vec<T>, lower: Vec<T>, q: T, terms: usize) -> Self {
        HyperSpec {
            upper,
            lower,
            argument: q.clone(),
            base: q,
            terms,
        }
    }
}

/// `sum_{k<terms} prod (upper;q)_k / prod (lower;q)_k * z^k / (q;q)_k`.
///
/// Summed with incremental term ratios; the ratio after the final term is never formed, so a
/// lower parameter whose Pochhammer vanishes exactly at `k = terms - 1` is admissible.
pub fn basic_hyper_terminating<T: Scalar>(spec: &HyperSpec<T>) -> Result<T> {
    let q = &spec.base;
    let mut total = T::zero();
    let mut term = T::one();
    let mut qk = T::one();
    for k in 0..spec.terms {
        total = total + &term;
        if k + 1 == spec.terms {
            break;
        }
        let mut num = spec.argument.clone();
        for a in &spec.upper {
            num = num * &(T::one() - &(a.clone() * &qk));
        }
        let mut den = T::one();
        for (index, b) in spec.lower.iter().enumerate() {
            let f = T::one() - &(b.clone() * &qk);
            if f.is_zero() {
                return Err(Error::ZeroDenominator { index, k });
            }
            den = den * &f;
        }
        qk = qk * q;
        let qq = T::one() - &qk;
        if qq.is_zero() {
            return Err(Error::ZeroDenominator {
                index: spec.lower.len(),
                k,
            });
        }
        den = den * &qq;
        term = div(&(term * &num), &den, "basic series term ratio")?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn empty_pochhammer_is_one() {
        assert_eq!(qpochhammer(&r(7, 3), &r(1, 4), 0), Rational::one());
    }

    #[test]
    fn pochhammer_zero_factor() {
        let q = r(2, 5);
        let a = q.recip().unwrap();
        assert_eq!(qpochhammer(&a, &q, 3), Rational::zero());
    }

    #[test]
    fn pochhammer_two_factors() {
        assert_eq!(qpochhammer(&r(1, 4), &r(1, 4), 2), r(45, 64));
    }

    #[test]
    fn inf_product_identity_and_zero() {
        assert_eq!(qpochhammer_inf_approx(0.0, 0.3, 1e-15).unwrap(), 1.0);
        assert_eq!(qpochhammer_inf_approx(1.0, 0.3, 1e-15).unwrap(), 0.0);
        assert!(qpochhammer_inf_approx(0.5, 1.0, 1e-15).is_err());
        assert!(qpochhammer_inf_approx(0.5, 0.5, 0.0).is_err());
    }

    #[test]
    fn inf_product_matches_long_product() {
        let got = qpochhammer_inf_approx(0.5, 0.25, 1e-15).unwrap();
        let mut brute = 1.0;
        for k in 0..60 {
            brute *= 1.0 - 0.5 * 0.25f64.powi(k);
        }
        assert!((got - brute).abs() < 1e-15);
    }

    #[test]
    fn single_term_series() {
        let spec = HyperSpec::at_q(vec![r(3, 2), r(5, 7)], vec![r(9, 4)], r(1, 3), 1);
        assert_eq!(basic_hyper_terminating(&spec).unwrap(), Rational::one());
    }

    #[test]
    fn two_term_series() {
        let q = r(1, 3);
        let a = r(2, 7);
        let c = r(5, 11);
        let qinv = q.recip().unwrap();
        let one = Rational::one();
        let spec = HyperSpec::at_q(vec![qinv.clone(), a.clone()], vec![c.clone()], q.clone(), 2);
        assert_eq!(basic_hyper_terminating(&spec).unwrap(), r(-13, 42));
        let spec = HyperSpec::at_q(vec![q.clone(), a.clone()], vec![c.clone()], q.clone(), 2);
        let expect = &one
            + &(&(&(&one - &q) * &(&one - &a)) * &q)
                .checked_div(&(&(&one - &c) * &(&one - &q)))
                .unwrap();
        assert_eq!(basic_hyper_terminating(&spec).unwrap(), expect);
    }

    #[test]
    fn zero_lower_pochhammer_detected() {
        let q = r(1, 2);
        let b = q.recip().unwrap();
        let spec = HyperSpec::at_q(vec![r(1, 5)], vec![b], q, 3);
        assert_eq!(
            basic_hyper_terminating(&spec),
            Err(Error::ZeroDenominator { index: 0, k: 1 })
        );
    }

    #[test]
    fn vanishing_lower_factor_after_last_term_is_fine() {
        let q = r(1, 2);
        let b = q.recip().unwrap();
        let spec = HyperSpec::at_q(vec![r(1, 5)], vec![b], q, 2);
        assert!(basic_hyper_terminating(&spec).is_ok());
    }
}
