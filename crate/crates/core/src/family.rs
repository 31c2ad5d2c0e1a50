//! The contract a base family must satisfy for the kernel, Krall and oracle layers.

use crate::error::{Error, Result};
use crate::exactnum::{div, Scalar};

/// Monic orthogonal polynomials on a finite lattice `s = 0..=N`.
///
/// `eval` must accept any integer `s`: the polynomials are evaluated at `x(s)` also outside the
/// support (difference quotients at the endpoints, degree checks).
pub trait OrthogonalFamily<T: Scalar>: Sync {
    /// `N`; degrees and nodes both run over `0..=N`.
    fn degree_max(&self) -> usize;

    /// Lattice abscissa `x(s)`.
    fn node(&self, s: i64) -> T;

    /// `P_n(x(s))`.
    fn eval(&self, n: usize, s: i64) -> Result<T>;

    /// Squared norm `d_n^2` with respect to [`OrthogonalFamily::mass`].
    fn d2(&self, n: usize) -> Result<T>;

    /// Discrete mass at node `s`, i.e. `ρ(s) Δx(s - 1/2)`.
    fn mass(&self, s: i64) -> Result<T>;

    /// `(β_n, γ_n)` of `x P_n = P_{n+1} + β_n P_n + γ_n P_{n-1}`; `γ_0 = 0`.
    fn recurrence(&self, n: usize) -> Result<(T, T)> {
        let big_n = self.degree_max() as i64;
        let mut num = T::zero();
        for s in 0..=big_n {
            let p = self.eval(n, s)?;
            num = num + &(self.node(s) * &p * &p * &self.mass(s)?);
        }
        let dn = self.d2(n)?;
        let beta = div(&num, &dn, "recurrence beta_n")?;
        let gamma = if n == 0 {
            T::zero()
        } else {
            div(&dn, &self.d2(n - 1)?, "recurrence gamma_n")?
        };
        Ok((beta, gamma))
    }

    fn boundary_0(&self, n: usize) -> Result<T> {
        self.eval(n, 0)
    }

    fn boundary_n(&self, n: usize) -> Result<T> {
        self.eval(n, self.degree_max() as i64)
    }

    /// Errors unless `n <= N`.
    fn check_degree(&self, n: usize) -> Result<()> {
        let max = self.degree_max();
        if n > max {
            Err(Error::DegreeOutOfRange { n, max })
        } else {
            Ok(())
        }
    }

    /// Errors unless `0 <= s <= N`.
    fn check_node(&self, s: i64) -> Result<()> {
        let max = self.degree_max();
        if s < 0 || s > max as i64 {
            Err(Error::NodeOutOfRange { s, max })
        } else {
            Ok(())
        }
    }
}
