//! Monic q-Racah polynomials on `x(s) = q^{-s} + δγ q^{s+1}`.
//!
//! `R_n(x(s)) = (αq, βδq, γq; q)_n / (αβq^{n+1}; q)_n · 4φ3(q^{-n}, αβq^{n+1}, q^{-s}, δγq^{s+1}; αq, βδq, γq | q; q)`
//! with one of `αq`, `βδq`, `γq` equal to `q^{-N}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    basic_hyper_terminating, div, product, qpochhammer, qpochhammer_inf_approx,
    qpochhammer_multi, HyperSpec, Scalar,
};
use crate::family::OrthogonalFamily;
use crate::lattice::{Lattice, QBase};

/// Which lower parameter terminates the support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Truncation {
    /// `αq = q^{-N}`
    #[serde(rename = "alpha")]
    AlphaQ,
    /// `βδq = q^{-N}`
    #[serde(rename = "betadelta")]
    BetaDeltaQ,
    /// `γq = q^{-N}`
    #[serde(rename = "gamma")]
    GammaQ,
}

impl std::str::FromStr for Truncation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(Truncation::AlphaQ),
            "betadelta" => Ok(Truncation::BetaDeltaQ),
            "gamma" => Ok(Truncation::GammaQ),
            other => Err(Error::Parse(format!(
                "truncation must be one of alpha, betadelta, gamma; got {other:?}"
            ))),
        }
    }
}

/// Free parameters; the truncated one may be omitted and is then derived.
#[derive(Debug, Clone, PartialEq)]
pub struct RacahInput<T> {
    pub alpha: Option<T>,
    pub beta: T,
    pub gamma: Option<T>,
    pub delta: Option<T>,
}

/// Validated parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct RacahParams<T> {
    pub lat: Lattice<T>,
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
    pub n: usize,
    pub truncation: Truncation,
}

impl<T: Scalar> RacahParams<T> {
    /// Derives the truncated parameter and checks admissibility.
    pub fn new(base: QBase<T>, input: RacahInput<T>, n: usize, truncation: Truncation) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        let qn1 = base.pow(-(n as i64) - 1);
        let pick = |given: Option<T>, derived: T, name: &str| -> Result<T> {
            match given {
                Some(g) if g != derived => Err(Error::InvalidParameter(format!(
                    "{name} = {g} contradicts the {truncation:?} truncation (requires {derived})"
                ))),
                _ => Ok(derived),
            }
        };
        let need = |given: Option<T>, name: &str| -> Result<T> {
            given.ok_or_else(|| Error::InvalidParameter(format!("{name} is required")))
        };
        let beta = input.beta;
        let (alpha, gamma, delta) = match truncation {
            Truncation::AlphaQ => (
                pick(input.alpha, qn1, "alpha")?,
                need(input.gamma, "gamma")?,
                need(input.delta, "delta")?,
            ),
            Truncation::GammaQ => (
                need(input.alpha, "alpha")?,
                pick(input.gamma, qn1, "gamma")?,
                need(input.delta, "delta")?,
            ),
            Truncation::BetaDeltaQ => {
                let d = div(&qn1, &beta, "delta = q^{-N-1}/beta")?;
                (
                    need(input.alpha, "alpha")?,
                    need(input.gamma, "gamma")?,
                    pick(input.delta, d, "delta")?,
                )
            }
        };
        let c1 = delta.clone() * &gamma * base.q();
        let p = RacahParams {
            lat: Lattice::qracah(base, c1),
            alpha,
            beta,
            gamma,
            delta,
            n,
            truncation,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let ab = self.alpha.clone() * &self.beta;
        for k in 1..=(2 * self.n as i64 + 2) {
            if ab.clone() * &self.q_pow(k) == T::one() {
                return Err(Error::InvalidParameter(format!(
                    "alpha*beta*q^{k} = 1 zeroes a recurrence denominator"
                )));
            }
        }
        let lows = self.lower_params();
        let names = ["alpha q", "beta delta q", "gamma q"];
        for (b, name) in lows.iter().zip(names) {
            for j in 0..self.n as i64 {
                if b.clone() * &self.q_pow(j) == T::one() {
                    return Err(Error::InvalidParameter(format!(
                        "({name}; q)_k vanishes at k = {} < N + 1",
                        j + 1
                    )));
                }
            }
        }
        self.lat.check_injective(self.n)
    }

    pub fn q(&self) -> &T {
        self.lat.q()
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> T {
        self.lat.base.pow(k)
    }

    /// `q^{two_k/2}`.
    pub fn q_half(&self, two_k: i64) -> T {
        self.lat.base.half_pow(two_k)
    }

    /// `(αq, βδq, γq)`.
    pub fn lower_params(&self) -> [T; 3] {
        let q = self.q();
        [
            self.alpha.clone() * q,
            self.beta.clone() * &self.delta * q,
            self.gamma.clone() * q,
        ]
    }

    pub fn ab(&self) -> T {
        self.alpha.clone() * &self.beta
    }

    pub fn dg(&self) -> T {
        self.delta.clone() * &self.gamma
    }
}

/// Which form of the second-order difference equation to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SodeConvention {
    /// `σ Δ/Δx(s-1/2)[∇y/∇x] + τ Δy/Δx + λ y`
    Forward,
    /// `σ Δ/Δx(s-1/2)[∇y/∇x] + τ (Δy/Δx + ∇y/∇x)/2 + λ y`
    Symmetric,
}

impl SodeConvention {
    pub const ALL: [SodeConvention; 2] = [SodeConvention::Forward, SodeConvention::Symmetric];
}

/// Outcome of [`QRacah::probe_sode`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SodeProbe {
    /// Conventions with identically zero residual on the probed grid.
    pub zero_residual: Vec<SodeConvention>,
    /// The unique zero-residual convention, if exactly one exists.
    pub pinned: Option<SodeConvention>,
    /// Largest `|Φ(s) - σ(s) - τ(s)Δx(s-1/2)|` over `0..=N`.
    pub phi_relation_max: f64,
    /// Whether that relation holds identically.
    pub phi_relation_holds: bool,
    pub grid: usize,
}

/// Normalisation constant against the infinite-product prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrefactorCheck {
    /// The exact normalisation constant, rounded.
    pub exact: f64,
    /// Prefactor as displayed in the main-data table.
    pub literal: f64,
    /// Displayed prefactor divided by `(1 - δγq)`.
    pub corrected: f64,
    pub literal_rel: f64,
    pub corrected_rel: f64,
}

/// The monic q-Racah family for one parameter set.
#[derive(Debug, Clone)]
pub struct QRacah<T> {
    p: RacahParams<T>,
    norm: Result<T>,
}

impl<T: Scalar> QRacah<T> {
    pub fn new(p: RacahParams<T>) -> Self {
        let norm = Self::compute_norm(&p);
        QRacah { p, norm }
    }

    pub fn params(&self) -> &RacahParams<T> {
        &self.p
    }

    pub fn lattice(&self) -> &Lattice<T> {
        &self.p.lat
    }

    fn one() -> T {
        T::one()
    }

    fn qp(&self, k: i64) -> T {
        self.p.q_pow(k)
    }

    fn hp(&self, two_k: i64) -> T {
        self.p.q_half(two_k)
    }

    /// `1 - c q^k`.
    fn om(&self, c: &T, k: i64) -> T {
        Self::one() - &(c.clone() * &self.qp(k))
    }

    /// `q^{1/2} - q^{-1/2}`.
    fn hv(&self) -> T {
        self.hp(1) - self.hp(-1)
    }

    // ---- evaluation -------------------------------------------------------------------------

    /// `(αq, βδq, γq; q)_n / (αβ q^{n+1}; q)_n`.
    pub fn prefactor(&self, n: usize) -> Result<T> {
        let q = self.p.q();
        let num = qpochhammer_multi(&self.p.lower_params(), q, n);
        let den = qpochhammer(&(self.p.ab() * &self.qp(n as i64 + 1)), q, n);
        div(&num, &den, "q-Racah prefactor")
    }

    /// The terminating 4φ3 (without prefactor) at degree `n`, node `s`.
    pub fn phi43(&self, n: usize, s: i64) -> Result<T> {
        let q = self.p.q().clone();
        let spec = HyperSpec::at_q(
            vec![
                self.qp(-(n as i64)),
                self.p.ab() * &self.qp(n as i64 + 1),
                self.qp(-s),
                self.p.dg() * &self.qp(s + 1),
            ],
            self.p.lower_params().to_vec(),
            q,
            n + 1,
        );
        basic_hyper_terminating(&spec)
    }

    /// `R_n(x(s))` from the basic series; any integer `s`.
    pub fn eval_hyper(&self, n: usize, s: i64) -> Result<T> {
        self.check_degree(n)?;
        Ok(self.prefactor(n)? * &self.phi43(n, s)?)
    }

    /// `R_n(x)` from the three-term recurrence.
    pub fn eval_ttrr(&self, n: usize, x: &T) -> Result<T> {
        self.check_degree(n)?;
        let mut prev = T::zero();
        let mut cur = T::one();
        for k in 0..n {
            let next = (x.clone() - &self.beta_n(k)?) * &cur - &(self.gamma_n(k)? * &prev);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// `R_n(x(0))` in closed form.
    pub fn boundary_0(&self, n: usize) -> Result<T> {
        self.prefactor(n)
    }

    /// `R_n(x(N))` in closed form, by truncation.
    pub fn boundary_n(&self, n: usize) -> Result<T> {
        let p = &self.p;
        let q = p.q();
        let big = p.n as i64;
        let k = n as i64;
        let qmn = self.qp(-big);
        match p.truncation {
            Truncation::AlphaQ => {
                let lead = crate::exactnum::powi(&(p.dg() * &self.qp(big + 1)), k)?;
                let bg = div(&p.beta, &p.gamma, "beta/gamma")? * &qmn;
                let di = div(&qmn, &p.delta, "q^{-N}/delta")?;
                let num = qpochhammer_multi(&[qmn.clone(), bg, di], q, n);
                let den = qpochhammer(&(p.beta.clone() * &self.qp(k - big)), q, n);
                Ok(lead * &div(&num, &den, "R_n(N) closed form")?)
            }
            Truncation::GammaQ => {
                let lead = crate::exactnum::powi(&p.delta, k)?;
                let da = div(&(p.alpha.clone() * q), &p.delta, "alpha q/delta")?;
                let num = qpochhammer_multi(&[qmn.clone(), p.beta.clone() * q, da], q, n);
                let den = qpochhammer(&(p.ab() * &self.qp(k + 1)), q, n);
                Ok(lead * &div(&num, &den, "R_n(N) closed form")?)
            }
            Truncation::BetaDeltaQ => {
                let lead = crate::exactnum::powi(&div(&p.gamma, &p.beta, "gamma/beta")?, k)?;
                let t = div(&(p.alpha.clone() * &qmn), &p.dg(), "alpha q^{-N}/(delta gamma)")?;
                let num = qpochhammer_multi(&[qmn.clone(), p.beta.clone() * q, t], q, n);
                let den = qpochhammer(&(p.ab() * &self.qp(k + 1)), q, n);
                Ok(lead * &div(&num, &den, "R_n(N) closed form")?)
            }
        }
    }

    // ---- main data --------------------------------------------------------------------------

    /// `β_n`.
    pub fn beta_n(&self, n: usize) -> Result<T> {
        let p = &self.p;
        let ab = p.ab();
        let k = n as i64;
        let t1 = div(
            &(self.om(&p.alpha, k + 1)
                * &self.om(&ab, k + 1)
                * &self.om(&(p.beta.clone() * &p.delta), k + 1)
                * &self.om(&p.gamma, k + 1)),
            &(self.om(&ab, 2 * k + 1) * &self.om(&ab, 2 * k + 2)),
            "beta_n",
        )?;
        let t2 = div(
            &(p.q().clone()
                * &self.om(&T::one(), k)
                * &self.om(&p.beta, k)
                * &(p.gamma.clone() - &(ab.clone() * &self.qp(k)))
                * &(p.delta.clone() - &(p.alpha.clone() * &self.qp(k)))),
            &(self.om(&ab, 2 * k) * &self.om(&ab, 2 * k + 1)),
            "beta_n",
        )?;
        Ok(T::one() + &(p.dg() * p.q()) - &t1 - &t2)
    }

    /// `γ_n`, the product of the two displayed fractions; `γ_0 = 0`.
    pub fn gamma_n(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Ok(T::zero());
        }
        let p = &self.p;
        let ab = p.ab();
        let k = n as i64;
        let f1 = div(
            &(self.om(&p.alpha, k)
                * &self.om(&ab, k)
                * &self.om(&(p.beta.clone() * &p.delta), k)
                * &self.om(&p.gamma, k)),
            &(self.om(&ab, 2 * k - 1) * &self.om(&ab, 2 * k)),
            "gamma_n",
        )?;
        let f2 = div(
            &(p.q().clone()
                * &self.om(&T::one(), k)
                * &self.om(&p.beta, k)
                * &(p.gamma.clone() - &(ab.clone() * &self.qp(k)))
                * &(p.delta.clone() - &(p.alpha.clone() * &self.qp(k)))),
            &(self.om(&ab, 2 * k) * &self.om(&ab, 2 * k + 1)),
            "gamma_n",
        )?;
        Ok(f1 * &f2)
    }

    /// `λ_n = -q^{-n+1/2}(1 - q^n)(1 - αβq^{n+1})`.
    pub fn lambda_n(&self, n: usize) -> T {
        let k = n as i64;
        -(self.hp(-2 * k + 1) * &self.om(&T::one(), k) * &self.om(&self.p.ab(), k + 1))
    }

    /// `d_n^2`.
    ///
    /// `(αq/δ; q)_n` and `(αβq/γ; q)_n` are absorbed into `(δγq)^n`, which keeps the formula
    /// finite at `δ = 0` or `γ = 0`.
    pub fn d2(&self, n: usize) -> Result<T> {
        let p = &self.p;
        let q = p.q();
        let ab = p.ab();
        let k = n as i64;
        let mut num = self.om(&ab, 1) * &self.qp(k);
        num = num
            * &qpochhammer_multi(
                &[
                    p.alpha.clone() * q,
                    p.beta.clone() * &p.delta * q,
                    p.gamma.clone() * q,
                    q.clone(),
                    p.beta.clone() * q,
                ],
                q,
                n,
            );
        for j in 1..=k {
            num = num
                * &(p.gamma.clone() - &(ab.clone() * &self.qp(j)))
                * &(p.delta.clone() - &(p.alpha.clone() * &self.qp(j)));
        }
        let abn1 = ab.clone() * &self.qp(k + 1);
        let den = self.om(&ab, 2 * k + 1)
            * &qpochhammer(&(ab.clone() * q), q, n)
            * &qpochhammer(&abn1, q, n)
            * &qpochhammer(&abn1, q, n);
        div(&num, &den, "d_n^2")
    }

    /// `σ(s)`, written as `(q^{1/2}-q^{-1/2})^2 q^{2-2s}(q^s-1)(δq^s-1)(γq^s-β)(δγq^s-α)`,
    /// which equals the `(δγq)^2(q^s-1)(q^s-δ^{-1})(q^s-βγ^{-1})(q^s-αδ^{-1}γ^{-1})` shape.
    pub fn sigma(&self, s: i64) -> T {
        let p = &self.p;
        let qs = self.qp(s);
        let hv = self.hv();
        hv.clone()
            * &hv
            * &self.qp(2 - 2 * s)
            * &(qs.clone() - &T::one())
            * &(p.delta.clone() * &qs - &T::one())
            * &(p.gamma.clone() * &qs - &p.beta)
            * &(p.dg() * &qs - &p.alpha)
    }

    /// `Φ(s)`.
    pub fn phi_big(&self, s: i64) -> T {
        let hv = self.hv();
        hv.clone() * &hv * &self.qp(-2 * s) * &self.pi4(s)
    }

    /// `(1-αq^{s+1})(1-βδq^{s+1})(1-γq^{s+1})(1-δγq^{s+1})`.
    fn pi4(&self, s: i64) -> T {
        let p = &self.p;
        self.om(&p.alpha, s + 1)
            * &self.om(&(p.beta.clone() * &p.delta), s + 1)
            * &self.om(&p.gamma, s + 1)
            * &self.om(&p.dg(), s + 1)
    }

    /// `τ(s)`.
    pub fn tau(&self, s: i64) -> Result<T> {
        let hv = self.hv();
        let sig_core = div(&self.sigma(s), &(hv.clone() * &hv * &self.qp(-2 * s)), "tau")?;
        let num = -(hv * &self.qp(-s)) * &(self.pi4(s) - &sig_core);
        div(&num, &self.om(&self.p.dg(), 2 * s + 1), "tau")
    }

    /// The brace `{(1-αβq^{2n+2}) x(s+n/2) + q^{-n/2}[...]}` shared by `τ_n`, `β̄_n`, `Θ`.
    fn brace(&self, n: usize, s: i64) -> T {
        let p = &self.p;
        let ab = p.ab();
        let k = n as i64;
        let inner = self.om(&p.alpha, k + 1)
            * &self.om(&(p.beta.clone() * &p.delta), k + 1)
            * &self.om(&p.gamma, k + 1)
            - &((T::one() + &(p.dg() * &self.qp(k + 1))) * &self.om(&ab, 2 * k + 2));
        self.om(&ab, 2 * k + 2) * &p.lat.x(2 * s + k) + &(self.hp(-k) * &inner)
    }

    /// `τ_n(s)`.
    pub fn tau_n(&self, n: usize, s: i64) -> T {
        -(self.qp(-(n as i64)) * &self.hv() * &self.brace(n, s))
    }

    /// `ᾱ_n = q^{-n+1/2}(q^{-1/2} - q^{1/2})(1 - αβq^{2n+1})`.
    pub fn alpha_bar(&self, n: usize) -> T {
        let k = n as i64;
        -(self.hp(-2 * k + 1) * &self.hv() * &self.om(&self.p.ab(), 2 * k + 1))
    }

    /// `α̂_n`; identical to `ᾱ_n`.
    pub fn alpha_hat(&self, n: usize) -> T {
        self.alpha_bar(n)
    }

    /// `β̄_n(s)`.
    pub fn beta_bar(&self, n: usize, s: i64) -> Result<T> {
        let ab = self.p.ab();
        let k = n as i64;
        let f = div(&self.om(&ab, k + 1), &self.om(&ab, 2 * k + 2), "beta_bar")?;
        Ok(self.hp(-k + 1) * &self.hv() * &f * &self.brace(n, s))
    }

    /// `β̂_n(s)`.
    pub fn beta_hat(&self, n: usize, s: i64) -> Result<T> {
        let k = n as i64;
        let corr = self.hp(-2 * s - 2 * k + 1)
            * &self.hv()
            * &self.om(&T::one(), k)
            * &self.om(&self.p.ab(), k + 1)
            * &self.om(&self.p.dg(), 2 * s + 1);
        Ok(self.beta_bar(n, s)? - &corr)
    }

    // ---- weight -----------------------------------------------------------------------------

    /// Unnormalised weight `ρ̂(s)`; `ρ̂(0) = 1`.
    ///
    /// `(αβ)^{-s}` is absorbed into `(α^{-1}δγq, β^{-1}γq; q)_s`.
    pub fn weight_unnormalized(&self, s: i64) -> Result<T> {
        Self::rho_hat(&self.p, s)
    }

    fn rho_hat(p: &RacahParams<T>, s: i64) -> Result<T> {
        if s < 0 {
            return Err(Error::NodeOutOfRange { s, max: p.n });
        }
        let q = p.q();
        let k = s as usize;
        let mut lows = vec![p.dg() * q];
        lows.extend(p.lower_params());
        let num = qpochhammer_multi(&lows, q, k);
        let mut den = qpochhammer_multi(&[q.clone(), p.delta.clone() * q], q, k);
        for j in 1..=s {
            let qj = p.q_pow(j);
            den = den * &(p.alpha.clone() - &(p.dg() * &qj)) * &(p.beta.clone() - &(p.gamma.clone() * &qj));
        }
        div(&num, &den, "weight denominator")
    }

    fn compute_norm(p: &RacahParams<T>) -> Result<T> {
        let mut total = T::zero();
        for s in 0..=p.n as i64 {
            total = total + &(Self::rho_hat(p, s)? * &p.lat.delta_x_half(s));
        }
        if total.is_zero() {
            return Err(Error::DivisionByZero("total weight"));
        }
        div(&T::one(), &total, "weight normalisation")
    }

    /// Normalisation constant `C` with `Σ C ρ̂(s) Δx(s-1/2) = 1`.
    pub fn weight_normalization(&self) -> Result<T> {
        self.norm.clone()
    }

    /// Normalised `ρ(s) = C ρ̂(s)`.
    pub fn weight(&self, s: i64) -> Result<T> {
        self.check_node(s)?;
        Ok(self.norm.clone()? * &self.weight_unnormalized(s)?)
    }

    /// Compares `C` with the infinite-product prefactor in floating point.
    pub fn weight_prefactor_check(&self) -> Result<PrefactorCheck> {
        let c = self.norm.clone()?.to_f64();
        let p = &self.p;
        let (a, b, g, d, q) = (
            p.alpha.to_f64(),
            p.beta.to_f64(),
            p.gamma.to_f64(),
            p.delta.to_f64(),
            p.q().to_f64(),
        );
        let tol = 1e-18;
        let inf = |x: f64| qpochhammer_inf_approx(x, q, tol);
        let num = inf(1.0 / (a * b * q))? * inf(g * d * q / a)? * inf(g * q / b)? * inf(d * q)?;
        let den = inf(g / (a * b))? * inf(d / a)? * inf(1.0 / b)? * inf(g * d * q * q)?;
        let literal = num / den / (q.powf(-0.5) - q.sqrt());
        let corrected = literal / (1.0 - d * g * q);
        Ok(PrefactorCheck {
            exact: c,
            literal,
            corrected,
            literal_rel: ((literal - c) / c).abs(),
            corrected_rel: ((corrected - c) / c).abs(),
        })
    }

    // ---- shift identity ---------------------------------------------------------------------

    fn d1(&self, n: usize) -> Result<T> {
        let p = &self.p;
        let ab = p.ab();
        let k = n as i64;
        let num = self.om(&ab, 2 * k - 1) * &self.om(&ab, 2 * k) * &self.om(&ab, 2 * k);
        let den = product(&[
            self.om(&p.alpha, k),
            self.om(&ab, k),
            self.om(&(p.beta.clone() * &p.delta), k),
            self.om(&p.gamma, k),
            self.om(&T::one(), k),
            self.om(&p.beta, k),
            p.gamma.clone() - &(ab.clone() * &self.qp(k)),
            p.delta.clone() - &(p.alpha.clone() * &self.qp(k)),
        ]);
        div(&num, &den, "Theta/Xi prefactor")
    }

    /// `Ξ(s,n)`; vanishes at `s = N` through the truncated factor.
    pub fn xi(&self, s: i64, n: usize) -> Result<T> {
        if n == 0 {
            return Err(Error::DegreeOutOfRange { n, max: self.p.n });
        }
        let k = n as i64;
        let num = -(self.qp(k - 1 - s) * &self.d1(n)? * &self.pi4(s));
        div(&num, &self.om(&self.p.dg(), 2 * s + 2), "Xi")
    }

    /// `Θ(s,n)` with `R_{n-1}(s) = Θ(s,n) R_n(s) + Ξ(s,n) R_n(s+1)`.
    pub fn theta(&self, s: i64, n: usize) -> Result<T> {
        if n == 0 {
            return Err(Error::DegreeOutOfRange { n, max: self.p.n });
        }
        let p = &self.p;
        let ab = p.ab();
        let k = n as i64;
        let t1a = (self.qp(-s) - &T::one()) * &self.om(&p.dg(), s + 1);
        let t1b = div(
            &(self.om(&p.alpha, k + 1)
                * &self.om(&ab, k + 1)
                * &self.om(&(p.beta.clone() * &p.delta), k + 1)
                * &self.om(&p.gamma, k + 1)),
            &(self.om(&ab, 2 * k + 1) * &self.om(&ab, 2 * k + 2)),
            "Theta",
        )?;
        let t1c = div(
            &(p.q().clone()
                * &self.om(&T::one(), k)
                * &self.om(&p.beta, k)
                * &(p.gamma.clone() - &(ab.clone() * &self.qp(k)))
                * &(p.delta.clone() - &(p.alpha.clone() * &self.qp(k)))),
            &(self.om(&ab, 2 * k) * &self.om(&ab, 2 * k + 1)),
            "Theta",
        )?;
        let t1 = t1a + &t1b + &t1c;
        let t2a = self.hp(k)
            * &div(&self.om(&ab, k + 1), &self.om(&ab, 2 * k + 2), "Theta")?
            * &self.brace(n, s);
        let t2b = self.qp(-s) * &self.om(&T::one(), k) * &self.om(&ab, k + 1) * &self.om(&p.dg(), 2 * s + 1);
        let t2 = t2a - &t2b;
        let bracket = self.om(&ab, 2 * k + 1) * &t1 - &t2;
        let main = div(&(self.d1(n)? * &bracket), p.q(), "Theta")?;
        Ok(main - &self.xi(s, n)?)
    }

    // ---- difference equation ----------------------------------------------------------------

    /// Residual of the difference equation for `R_n` at `s` under `conv`.
    pub fn sode_residual(&self, n: usize, s: i64, conv: SodeConvention) -> Result<T> {
        let lat = &self.p.lat;
        let f = |t: i64| self.eval_hyper(n, t);
        let fw = lat.fwd_quot(f, s)?;
        let bw = lat.bwd_quot(f, s)?;
        let dxh = lat.delta_x_half(s);
        if dxh.is_zero() {
            return Err(Error::ZeroIncrement(s));
        }
        let second = div(&(fw.clone() - &bw), &dxh, "second difference")?;
        let first = match conv {
            SodeConvention::Forward => fw,
            SodeConvention::Symmetric => div(&(fw + &bw), &T::from_i64(2), "half sum")?,
        };
        Ok(self.sigma(s) * &second + &(self.tau(s)? * &first) + &(self.lambda_n(n) * &f(s)?))
    }

    /// Tries every convention on `0..=N` × interior nodes and reports which vanish identically.
    pub fn probe_sode(&self) -> Result<SodeProbe> {
        let big = self.p.n as i64;
        let mut zero_residual = Vec::new();
        let mut grid = 0;
        for conv in SodeConvention::ALL {
            let mut all_zero = true;
            grid = 0;
            for n in 0..=self.p.n {
                for s in 1..big {
                    grid += 1;
                    if !self.sode_residual(n, s, conv)?.is_zero() {
                        all_zero = false;
                    }
                }
            }
            if all_zero && grid > 0 {
                zero_residual.push(conv);
            }
        }
        let mut phi_max = 0.0f64;
        let mut holds = true;
        for s in 0..=big {
            let d = self.phi_big(s) - &self.sigma(s) - &(self.tau(s)? * &self.p.lat.delta_x_half(s));
            if !d.is_zero() {
                holds = false;
            }
            phi_max = phi_max.max(d.to_f64().abs());
        }
        let pinned = (zero_residual.len() == 1).then(|| zero_residual[0]);
        Ok(SodeProbe {
            zero_residual,
            pinned,
            phi_relation_max: phi_max,
            phi_relation_holds: holds,
            grid,
        })
    }
}

impl<T: Scalar> OrthogonalFamily<T> for QRacah<T> {
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
        QRacah::d2(self, n)
    }

    fn mass(&self, s: i64) -> Result<T> {
        Ok(self.weight(s)? * &self.p.lat.delta_x_half(s))
    }

    fn recurrence(&self, n: usize) -> Result<(T, T)> {
        Ok((self.beta_n(n)?, self.gamma_n(n)?))
    }

    fn boundary_0(&self, n: usize) -> Result<T> {
        QRacah::boundary_0(self, n)
    }

    fn boundary_n(&self, n: usize) -> Result<T> {
        QRacah::boundary_n(self, n)
    }
}
