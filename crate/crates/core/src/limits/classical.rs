//! Classical Racah polynomials on `λ(s) = s(s + γ + δ + 1)`, in floating point.
//!
//! Only the `γ + 1 = -N` truncation is provided.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::OrthogonalFamily;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RacahClassicalParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub n: usize,
}

impl RacahClassicalParams {
    /// Sets `γ = -N - 1`.
    pub fn new(alpha: f64, beta: f64, delta: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        let p = RacahClassicalParams { alpha, beta, gamma: -(n as f64) - 1.0, delta, n };
        for (name, v) in [("alpha", alpha), ("beta", beta), ("delta", delta)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        let bad = |a: f64| (0..n).any(|j| a + j as f64 == 0.0);
        if bad(alpha + 1.0) || bad(beta + delta + 1.0) {
            return Err(Error::InvalidParameter("a lower 4F3 parameter hits a non-positive integer".into()));
        }
        if bad(-alpha + p.gamma + delta + 1.0) || bad(-beta + p.gamma + 1.0) || bad(delta + 1.0) {
            return Err(Error::InvalidParameter("weight denominator vanishes on 0..N".into()));
        }
        if p.gamma + delta + 1.0 == 0.0 {
            return Err(Error::InvalidParameter("gamma + delta + 1 = 0".into()));
        }
        if (1..=2 * n + 1).any(|k| alpha + beta + k as f64 == 0.0) {
            return Err(Error::InvalidParameter("alpha + beta + k = 0 zeroes the prefactor".into()));
        }
        Ok(p)
    }

    /// `λ(s)`.
    pub fn node(&self, s: i64) -> f64 {
        let s = s as f64;
        s * (s + self.gamma + self.delta + 1.0)
    }
}

/// `(a)_k`.
pub fn rising(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

#[derive(Debug, Clone)]
pub struct RacahClassical {
    p: RacahClassicalParams,
    total: f64,
    norms: Vec<f64>,
}

impl RacahClassical {
    /// Norms are computed from the normalised measure.
    pub fn new(p: RacahClassicalParams) -> Result<Self> {
        let mut f = RacahClassical { p, total: 1.0, norms: Vec::new() };
        let big = f.p.n as i64;
        let total: f64 = (0..=big).map(|s| f.weight_unnormalized(s)).sum();
        if total == 0.0 || !total.is_finite() {
            return Err(Error::DivisionByZero("classical Racah total weight"));
        }
        f.total = total;
        let norms = (0..=f.p.n)
            .map(|n| {
                (0..=big)
                    .map(|s| {
                        let v = f.eval_4f3(n, s);
                        v * v * f.weight_unnormalized(s) / total
                    })
                    .sum()
            })
            .collect();
        f.norms = norms;
        Ok(f)
    }

    pub fn params(&self) -> &RacahClassicalParams {
        &self.p
    }

    /// `(α+1)_n (β+δ+1)_n (γ+1)_n / (α+β+n+1)_n 4F3(-n, α+β+n+1, -s, s+γ+δ+1; α+1, β+δ+1, γ+1 | 1)`.
    pub fn eval_4f3(&self, n: usize, s: i64) -> f64 {
        let p = &self.p;
        let nf = n as f64;
        let sf = s as f64;
        let lower = [p.alpha + 1.0, p.beta + p.delta + 1.0, p.gamma + 1.0];
        let upper = [-nf, p.alpha + p.beta + nf + 1.0, -sf, sf + p.gamma + p.delta + 1.0];
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..n {
            let kf = k as f64;
            let num: f64 = upper.iter().map(|a| a + kf).product();
            let den: f64 = lower.iter().map(|b| b + kf).product::<f64>() * (kf + 1.0);
            term *= num / den;
            sum += term;
        }
        let pref = lower.iter().map(|b| rising(*b, n)).product::<f64>() / rising(p.alpha + p.beta + nf + 1.0, n);
        pref * sum
    }

    /// `(α+1)_s (β+δ+1)_s (γ+1)_s (γ+δ+1)_s / ((γ+δ-α+1)_s (γ-β+1)_s (δ+1)_s s!) (2s+γ+δ+1)/(γ+δ+1)`.
    pub fn weight_unnormalized(&self, s: i64) -> f64 {
        let p = &self.p;
        let k = s as usize;
        let c = p.gamma + p.delta + 1.0;
        let num = rising(p.alpha + 1.0, k) * rising(p.beta + p.delta + 1.0, k) * rising(p.gamma + 1.0, k) * rising(c, k);
        let den = rising(c - p.alpha, k) * rising(p.gamma - p.beta + 1.0, k) * rising(p.delta + 1.0, k) * rising(1.0, k);
        num / den * (2.0 * s as f64 + c) / c
    }
}

impl OrthogonalFamily<f64> for RacahClassical {
    fn degree_max(&self) -> usize {
        self.p.n
    }

    fn node(&self, s: i64) -> f64 {
        self.p.node(s)
    }

    fn eval(&self, n: usize, s: i64) -> Result<f64> {
        self.check_degree(n)?;
        Ok(self.eval_4f3(n, s))
    }

    fn d2(&self, n: usize) -> Result<f64> {
        self.check_degree(n)?;
        Ok(self.norms[n])
    }

    fn mass(&self, s: i64) -> Result<f64> {
        self.check_node(s)?;
        Ok(self.weight_unnormalized(s) / self.total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam() -> RacahClassical {
        RacahClassical::new(RacahClassicalParams::new(0.5, 0.3, 0.7, 4).unwrap()).unwrap()
    }

    #[test]
    fn monic_in_lambda() {
        let f = fam();
        for n in 1..=4usize {
            let samples: Vec<(f64, f64)> = (0..=n as i64).map(|s| (f.node(s), f.eval_4f3(n, s))).collect();
            let lead = crate::exactnum::leading_coefficient(&samples, n).unwrap();
            assert!((lead - 1.0).abs() < 1e-9, "n={n} lead={lead}");
        }
    }

    #[test]
    fn orthogonal() {
        let f = fam();
        for n in 0..=4usize {
            for m in 0..n {
                let acc: f64 = (0..=4).map(|s| f.eval_4f3(n, s) * f.eval_4f3(m, s) * f.mass(s).unwrap()).sum();
                assert!(acc.abs() < 1e-10 * f.d2(n).unwrap().abs().max(1.0), "n={n} m={m} acc={acc}");
            }
        }
    }
}
