use super::scalar::{div, Scalar};
use crate::error::{Error, Result};

/// Newton divided-difference coefficients `f[x0], f[x0,x1], ...` of the samples.
pub fn newton_coefficients<T: Scalar>(samples: &[(T, T)]) -> Result<Vec<T>> {
    for i in 0..samples.len() {
        for j in 0..i {
            if samples[i].0 == samples[j].0 {
                return Err(Error::DuplicateAbscissa(i));
            }
        }
    }
    let mut table: Vec<T> = samples.iter().map(|(_, y)| y.clone()).collect();
    let mut coeffs = Vec::with_capacity(samples.len());
    for level in 0..samples.len() {
        coeffs.push(table[0].clone());
        let next: Result<Vec<T>> = (0..table.len().saturating_sub(1))
            .map(|i| {
                let dx = samples[i + level + 1].0.clone() - &samples[i].0;
                div(&(table[i + 1].clone() - &table[i]), &dx, "divided difference")
            })
            .collect();
        table = next?;
    }
    Ok(coeffs)
}

/// Leading coefficient of the degree-`degree` interpolant through the first `degree + 1` samples.
pub fn leading_coefficient<T: Scalar>(samples: &[(T, T)], degree: usize) -> Result<T> {
    if samples.len() < degree + 1 {
        return Err(Error::TooFewSamples {
            needed: degree + 1,
            got: samples.len(),
        });
    }
    let coeffs = newton_coefficients(&samples[..=degree])?;
    Ok(coeffs[degree].clone())
}

/// Exact degree of the interpolant through all samples; `None` for the zero polynomial.
///
/// Equals the true polynomial degree whenever that degree is below `samples.len()`.
pub fn interpolation_degree<T: Scalar>(samples: &[(T, T)]) -> Result<Option<usize>> {
    let coeffs = newton_coefficients(samples)?;
    Ok(coeffs.iter().rposition(|c| !c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn identity_polynomial() {
        let s = vec![(r(2), r(2)), (r(5), r(5))];
        assert_eq!(leading_coefficient(&s, 1).unwrap(), r(1));
    }

    #[test]
    fn constant() {
        let s = vec![(r(3), r(7))];
        assert_eq!(leading_coefficient(&s, 0).unwrap(), r(7));
    }

    #[test]
    fn quadratic() {
        let f = |x: i64| x * x - 3 * x;
        let s: Vec<_> = [1, 4, -2].iter().map(|&x| (r(x), r(f(x)))).collect();
        assert_eq!(leading_coefficient(&s, 2).unwrap(), r(1));
        let s: Vec<_> = (0..6).map(|x| (r(x), r(f(x)))).collect();
        assert_eq!(interpolation_degree(&s).unwrap(), Some(2));
    }

    #[test]
    fn errors() {
        let s = vec![(r(1), r(1)), (r(1), r(2))];
        assert_eq!(leading_coefficient(&s, 1), Err(Error::DuplicateAbscissa(1)));
        assert!(matches!(
            leading_coefficient(&s[..1], 1),
            Err(Error::TooFewSamples { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let s: Vec<_> = (0..4).map(|x| (r(x), r(0))).collect();
        assert_eq!(interpolation_degree(&s).unwrap(), None);
    }
}
