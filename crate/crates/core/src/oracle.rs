//! Ground truth by brute force: monic Gram-Schmidt in the monomial basis of `x` against an
//! explicit discrete measure with optional point masses.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{div, Scalar};
use crate::family::OrthogonalFamily;

/// `u = Σ_s w_s δ_{x(s)} + Σ_k m_k δ_{x(s_k)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteMeasure<T> {
    /// `(s, x(s))`, pairwise distinct in `x`.
    pub nodes: Vec<(i64, T)>,
    /// `ρ(s) Δx(s - 1/2)` per node.
    pub weights: Vec<T>,
    /// `(node index, mass)`.
    pub masses: Vec<(usize, T)>,
}

impl<T: Scalar> DiscreteMeasure<T> {
    pub fn new(nodes: Vec<(i64, T)>, weights: Vec<T>, masses: Vec<(usize, T)>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::LengthMismatch { expected: nodes.len(), got: weights.len() });
        }
        for i in 0..nodes.len() {
            for j in 0..i {
                if nodes[i].1 == nodes[j].1 {
                    return Err(Error::DuplicateAbscissa(i));
                }
            }
        }
        if let Some((k, _)) = masses.iter().find(|(k, _)| *k >= nodes.len()) {
            return Err(Error::NodeOutOfRange { s: *k as i64, max: nodes.len().saturating_sub(1) });
        }
        let m = DiscreteMeasure { nodes, weights, masses };
        if m.total().is_zero() {
            return Err(Error::InvalidParameter("total mass is zero".into()));
        }
        Ok(m)
    }

    /// Nodes `0..=N` of `fam` with its masses; no point masses.
    pub fn from_family<F: OrthogonalFamily<T> + ?Sized>(fam: &F) -> Result<Self> {
        let big = fam.degree_max() as i64;
        let nodes = (0..=big).map(|s| (s, fam.node(s))).collect();
        let weights = (0..=big).map(|s| fam.mass(s)).collect::<Result<Vec<_>>>()?;
        Self::new(nodes, weights, Vec::new())
    }

    /// Adds `a` at the first node and `b` at the last; zero masses are dropped.
    pub fn with_endpoint_masses(mut self, a: T, b: T) -> Self {
        let last = self.nodes.len() - 1;
        for (k, m) in [(0, a), (last, b)] {
            if !m.is_zero() {
                self.masses.push((k, m));
            }
        }
        self
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `⟨1, 1⟩`.
    pub fn total(&self) -> T {
        let ones = vec![T::one(); self.len()];
        self.inner_product(&ones, &ones)
    }

    /// `Σ f g w + Σ m f g` over node values.
    pub fn inner_product(&self, f: &[T], g: &[T]) -> T {
        let mut acc = T::zero();
        for ((a, b), w) in f.iter().zip(g).zip(&self.weights) {
            acc = acc + &(a.clone() * b * w);
        }
        for (k, m) in &self.masses {
            acc = acc + &(f[*k].clone() * &g[*k] * m);
        }
        acc
    }
}

/// Monic orthogonal polynomials `p_0..p_nmax` and their recurrence data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramSchmidt<T> {
    /// `coeffs[n][k]` multiplies `x^k`; `coeffs[n][n] = 1`.
    pub coeffs: Vec<Vec<T>>,
    pub norms: Vec<T>,
    pub beta: Vec<T>,
    /// `gamma[0] = 0`.
    pub gamma: Vec<T>,
    /// `p_n` at the measure's nodes.
    pub values: Vec<Vec<T>>,
}

impl<T: Scalar> GramSchmidt<T> {
    /// Horner evaluation of `p_n(x)`.
    pub fn eval(&self, n: usize, x: &T) -> T {
        self.coeffs[n].iter().rev().fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn degree_max(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Full Gram-Schmidt on `1, x, x^2, ...`; errors with [`Error::QuasiDefinite`] at the first
/// vanishing norm.
pub fn gram_schmidt_monic<T: Scalar>(mu: &DiscreteMeasure<T>, nmax: usize) -> Result<GramSchmidt<T>> {
    if nmax + 1 > mu.len() {
        return Err(Error::TooFewSamples { needed: nmax + 1, got: mu.len() });
    }
    let xs: Vec<T> = mu.nodes.iter().map(|(_, x)| x.clone()).collect();
    let mut coeffs: Vec<Vec<T>> = Vec::with_capacity(nmax + 1);
    let mut values: Vec<Vec<T>> = Vec::with_capacity(nmax + 1);
    let mut norms: Vec<T> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        // Start from x^n.
        let mut c = vec![T::zero(); n + 1];
        c[n] = T::one();
        let mut vals: Vec<T> = xs.iter().map(|x| pow_usize(x, n)).collect();
        for k in 0..n {
            let proj = div(&mu.inner_product(&vals, &values[k]), &norms[k], "projection")?;
            for (ci, pk) in c.iter_mut().zip(&coeffs[k]) {
                *ci = ci.clone() - &(proj.clone() * pk);
            }
            for (v, pk) in vals.iter_mut().zip(&values[k]) {
                *v = v.clone() - &(proj.clone() * pk);
            }
        }
        let nrm = mu.inner_product(&vals, &vals);
        if nrm.is_zero() {
            return Err(Error::QuasiDefinite(n));
        }
        coeffs.push(c);
        values.push(vals);
        norms.push(nrm);
    }
    let mut beta = Vec::with_capacity(nmax + 1);
    let mut gamma = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let xp: Vec<T> = values[n].iter().zip(&xs).map(|(p, x)| p.clone() * x).collect();
        beta.push(div(&mu.inner_product(&xp, &values[n]), &norms[n], "oracle beta")?);
        gamma.push(if n == 0 { T::zero() } else { div(&norms[n], &norms[n - 1], "oracle gamma")? });
    }
    Ok(GramSchmidt { coeffs, norms, beta, gamma, values })
}

fn pow_usize<T: Scalar>(x: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn uniform(n: i64) -> DiscreteMeasure<Rational> {
        let nodes = (0..=n).map(|s| (s, Rational::from_integer(s))).collect();
        let w = vec![r(1, n + 1); (n + 1) as usize];
        DiscreteMeasure::new(nodes, w, Vec::new()).unwrap()
    }

    #[test]
    fn first_steps_closed_form() {
        let mu = uniform(3).with_endpoint_masses(r(1, 10), r(1, 20));
        let gs = gram_schmidt_monic(&mu, 3).unwrap();
        assert_eq!(gs.coeffs[0], vec![Rational::one()]);
        let xs: Vec<Rational> = (0..4).map(Rational::from_integer).collect();
        let ones = vec![Rational::one(); 4];
        let mean = mu.inner_product(&xs, &ones) / mu.total();
        assert_eq!(gs.coeffs[1], vec![-mean, Rational::one()]);
        assert_eq!(mu.total(), r(23, 20));
        for n in 0..=3 {
            assert_eq!(*gs.coeffs[n].last().unwrap(), Rational::one());
            for m in 0..n {
                assert!(mu.inner_product(&gs.values[n], &gs.values[m]).is_zero());
            }
        }
    }

    #[test]
    fn recurrence_matches_values() {
        let mu = uniform(4);
        let gs = gram_schmidt_monic(&mu, 3).unwrap();
        for n in 1..3 {
            for (i, (_, x)) in mu.nodes.iter().enumerate() {
                let lhs = x.clone() * &gs.values[n][i];
                let rhs = gs.values[n + 1][i].clone()
                    + gs.beta[n].clone() * &gs.values[n][i]
                    + gs.gamma[n].clone() * &gs.values[n - 1][i];
                assert_eq!(lhs, rhs);
                assert_eq!(gs.eval(n, x), gs.values[n][i]);
            }
        }
    }

    #[test]
    fn detects_vanishing_norm() {
        let nodes = vec![(0, r(-1, 1)), (1, r(0, 1)), (2, r(1, 1))];
        // Mean 2 and second moment 4 give ⟨x - 2, x - 2⟩ = 0.
        let mu = DiscreteMeasure::new(nodes, vec![r(1, 1), r(-3, 1), r(3, 1)], Vec::new()).unwrap();
        assert_eq!(gram_schmidt_monic(&mu, 2).unwrap_err(), Error::QuasiDefinite(1));
    }

    #[test]
    fn rejects_duplicates_and_size() {
        let nodes = vec![(0, r(1, 1)), (1, r(1, 1))];
        assert!(DiscreteMeasure::new(nodes, vec![r(1, 2), r(1, 2)], Vec::new()).is_err());
        assert!(gram_schmidt_monic(&uniform(2), 3).is_err());
    }
}
