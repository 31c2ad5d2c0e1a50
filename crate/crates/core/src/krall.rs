//! Krall-type modification: point masses `A` at `s = 0` and `B` at `s = N`.
//!
//! `R̃_n(s) = R_n(s) - A R̃_n(0) K_{n-1}(s,0) - B R̃_n(N) K_{n-1}(s,N)`.
//!
//! The layer is generic over [`OrthogonalFamily`]; the representation formulas that need the
//! q-Racah main data live in an `impl` block specialised to [`QRacah`]. One mass point is the
//! case `B = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{basic_hyper_terminating, div, qpochhammer, qpochhammer_multi, HyperSpec, Scalar};
use crate::family::OrthogonalFamily;
use crate::kernels::{kernel_at0_compact, kernel_at_n_compact, kernel_prev, KernelCoeffs};
use crate::qracah::QRacah;

/// Point masses at the two endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassConfig<T> {
    #[serde(rename = "A")]
    pub a: T,
    #[serde(rename = "B")]
    pub b: T,
}

impl<T: Scalar> MassConfig<T> {
    pub fn new(a: T, b: T) -> Self {
        MassConfig { a, b }
    }

    pub fn none() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// The same `A` with `B = 0`.
    pub fn one_mass(&self) -> Self {
        Self::new(self.a.clone(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Modified endpoint values and norm at one degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KrallBoundary<T> {
    /// `R̃_n(0)`
    pub r0: T,
    /// `R̃_n(N)`
    pub r_n: T,
    /// `κ_{n-1}(0,N)`
    pub kappa_det: T,
    /// `d̃_n^2`
    pub d2_mod: T,
}

/// Modified recurrence data at one degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TtrrMod<T> {
    pub beta_mod: T,
    pub gamma_mod: T,
    pub delta_n: T,
}

/// `κ_m(s,t) = 1 + A K_m(s,s) + B K_m(t,t) + AB (K_m(s,s) K_m(t,t) - K_m(s,t)^2)` with `m = n-1`.
pub fn kappa<T: Scalar, F: OrthogonalFamily<T> + ?Sized>(
    fam: &F,
    masses: &MassConfig<T>,
    n: usize,
    s: i64,
    t: i64,
) -> Result<T> {
    let kss = kernel_prev(fam, n, s, s)?;
    let ktt = kernel_prev(fam, n, t, t)?;
    let kst = kernel_prev(fam, n, s, t)?;
    let ab = masses.a.clone() * &masses.b;
    Ok(T::one()
        + &(masses.a.clone() * &kss)
        + &(masses.b.clone() * &ktt)
        + &(ab * &(kss * &ktt - &(kst.clone() * &kst))))
}

/// `R̃_n(0)`, `R̃_n(N)`, `κ_{n-1}(0,N)`, `d̃_n^2`; kernels by direct summation.
pub fn boundary_modified<T: Scalar, F: OrthogonalFamily<T> + ?Sized>(
    fam: &F,
    masses: &MassConfig<T>,
    n: usize,
) -> Result<KrallBoundary<T>> {
    fam.check_degree(n)?;
    let big = fam.degree_max() as i64;
    let (a, b) = (&masses.a, &masses.b);
    let k00 = kernel_prev(fam, n, 0, 0)?;
    let knn = kernel_prev(fam, n, big, big)?;
    let k0n = kernel_prev(fam, n, 0, big)?;
    let kd = T::one() + &(a.clone() * &k00) + &(b.clone() * &knn)
        + &(a.clone() * b * &(k00.clone() * &knn - &(k0n.clone() * &k0n)));
    if kd.is_zero() {
        return Err(Error::NonExistent { degree: n });
    }
    let p0 = fam.boundary_0(n)?;
    let pn = fam.boundary_n(n)?;
    let one_b = T::one() + &(b.clone() * &knn);
    let one_a = T::one() + &(a.clone() * &k00);
    let r0 = div(&(one_b.clone() * &p0 - &(b.clone() * &k0n * &pn)), &kd, "R~_n(0)")?;
    let r_n = div(&(one_a.clone() * &pn - &(a.clone() * &k0n * &p0)), &kd, "R~_n(N)")?;
    let corr = a.clone() * &p0 * &p0 * &one_b + &(b.clone() * &pn * &pn * &one_a)
        - &(T::from_i64(2) * a * b * &p0 * &pn * &k0n);
    let d2_mod = fam.d2(n)? + &div(&corr, &kd, "d~_n^2")?;
    Ok(KrallBoundary { r0, r_n, kappa_det: kd, d2_mod })
}

/// The modified family over a base family; boundary data is precomputed for every degree.
#[derive(Debug, Clone)]
pub struct KrallFamily<'a, T, F: ?Sized> {
    fam: &'a F,
    masses: MassConfig<T>,
    bounds: Vec<KrallBoundary<T>>,
}

impl<'a, T: Scalar, F: OrthogonalFamily<T> + ?Sized> KrallFamily<'a, T, F> {
    /// Errors with [`Error::NonExistent`] at the first degree where `κ_{n-1}(0,N) = 0`.
    pub fn new(fam: &'a F, masses: MassConfig<T>) -> Result<Self> {
        let bounds = (0..=fam.degree_max())
            .map(|n| boundary_modified(fam, &masses, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(KrallFamily { fam, masses, bounds })
    }

    pub fn base(&self) -> &'a F {
        self.fam
    }

    pub fn masses(&self) -> &MassConfig<T> {
        &self.masses
    }

    pub fn boundary(&self, n: usize) -> Result<&KrallBoundary<T>> {
        self.bounds.get(n).ok_or(Error::DegreeOutOfRange { n, max: self.fam.degree_max() })
    }

    fn big(&self) -> i64 {
        self.fam.degree_max() as i64
    }

    /// `R̃_n(s)` via the kernel representation; defined at every `s`.
    pub fn eval_krall(&self, n: usize, s: i64) -> Result<T> {
        let bd = self.boundary(n)?;
        let big = self.big();
        let mut v = self.fam.eval(n, s)?;
        if !self.masses.a.is_zero() {
            v = v - &(self.masses.a.clone() * &bd.r0 * &kernel_prev(self.fam, n, s, 0)?);
        }
        if !self.masses.b.is_zero() {
            v = v - &(self.masses.b.clone() * &bd.r_n * &kernel_prev(self.fam, n, s, big)?);
        }
        Ok(v)
    }

    /// `φ(s) = (x(s) - x(0))(x(s) - x(N))`.
    pub fn phi(&self, s: i64) -> T {
        let x = self.fam.node(s);
        (x.clone() - &self.fam.node(0)) * &(x - &self.fam.node(self.big()))
    }

    fn gaps(&self, s: i64) -> (T, T) {
        let x = self.fam.node(s);
        (x.clone() - &self.fam.node(0), x - &self.fam.node(self.big()))
    }

    /// `A(s,n)`, quadratic in `x(s)`.
    pub fn a_sn(&self, s: i64, n: usize) -> Result<T> {
        if n == 0 {
            return Ok(self.phi(s));
        }
        let bd = self.boundary(n)?;
        let (g0, gn) = self.gaps(s);
        let num = self.masses.a.clone() * &bd.r0 * &self.fam.boundary_0(n - 1)? * &gn
            + &(self.masses.b.clone() * &bd.r_n * &self.fam.boundary_n(n - 1)? * &g0);
        Ok(self.phi(s) - &div(&num, &self.fam.d2(n - 1)?, "A(s,n)")?)
    }

    /// `B(s,n)`, linear in `x(s)`.
    pub fn b_sn(&self, s: i64, n: usize) -> Result<T> {
        if n == 0 {
            return Ok(T::zero());
        }
        let bd = self.boundary(n)?;
        let (g0, gn) = self.gaps(s);
        let num = self.masses.a.clone() * &bd.r0 * &self.fam.boundary_0(n)? * &gn
            + &(self.masses.b.clone() * &bd.r_n * &self.fam.boundary_n(n)? * &g0);
        div(&num, &self.fam.d2(n - 1)?, "B(s,n)")
    }

    /// `φ(s) R̃_n(s) = A(s,n) R_n(s) + B(s,n) R_{n-1}(s)`.
    pub fn eval_rep2(&self, n: usize, s: i64) -> Result<T> {
        if n == 0 {
            return Ok(self.phi(s));
        }
        Ok(self.a_sn(s, n)? * &self.fam.eval(n, s)? + &(self.b_sn(s, n)? * &self.fam.eval(n - 1, s)?))
    }

    /// One-mass factor `x(s) - x(0)`.
    pub fn phi_one(&self, s: i64) -> T {
        self.gaps(s).0
    }

    /// One-mass `A(s,n) = φ1(s) - A R̃_n(0) R_{n-1}(0) / d_{n-1}^2`; requires `B = 0`.
    pub fn a_sn_one(&self, s: i64, n: usize) -> Result<T> {
        self.require_one_mass()?;
        if n == 0 {
            return Ok(self.phi_one(s));
        }
        let num = self.masses.a.clone() * &self.boundary(n)?.r0 * &self.fam.boundary_0(n - 1)?;
        Ok(self.phi_one(s) - &div(&num, &self.fam.d2(n - 1)?, "A(s,n)")?)
    }

    /// One-mass `B(s,n) = A R̃_n(0) R_n(0) / d_{n-1}^2`; requires `B = 0`.
    pub fn b_sn_one(&self, s: i64, n: usize) -> Result<T> {
        self.require_one_mass()?;
        let _ = s;
        if n == 0 {
            return Ok(T::zero());
        }
        let num = self.masses.a.clone() * &self.boundary(n)?.r0 * &self.fam.boundary_0(n)?;
        div(&num, &self.fam.d2(n - 1)?, "B(s,n)")
    }

    /// `φ1(s) R̃_n(s)` for one mass point.
    pub fn eval_rep2_one(&self, n: usize, s: i64) -> Result<T> {
        if n == 0 {
            self.require_one_mass()?;
            return Ok(self.phi_one(s));
        }
        Ok(self.a_sn_one(s, n)? * &self.fam.eval(n, s)? + &(self.b_sn_one(s, n)? * &self.fam.eval(n - 1, s)?))
    }

    /// One-mass `R̃_n(0) = R_n(0) / (1 + A K_{n-1}(0,0))`; requires `B = 0`.
    pub fn boundary_one_mass(&self, n: usize) -> Result<T> {
        self.require_one_mass()?;
        let den = T::one() + &(self.masses.a.clone() * &kernel_prev(self.fam, n, 0, 0)?);
        if den.is_zero() {
            return Err(Error::NonExistent { degree: n });
        }
        div(&self.fam.boundary_0(n)?, &den, "one-mass boundary")
    }

    fn require_one_mass(&self) -> Result<()> {
        if self.masses.b.is_zero() {
            Ok(())
        } else {
            Err(Error::InvalidParameter("one-mass formulas need B = 0".into()))
        }
    }

    /// `Δ_n = (A R̃_n(0) R_n(0) + B R̃_n(N) R_n(N)) / d_n^2`.
    pub fn delta_n(&self, n: usize) -> Result<T> {
        let bd = self.boundary(n)?;
        let num = self.masses.a.clone() * &bd.r0 * &self.fam.boundary_0(n)?
            + &(self.masses.b.clone() * &bd.r_n * &self.fam.boundary_n(n)?);
        div(&num, &self.fam.d2(n)?, "Delta_n")
    }

    /// `β̃_n`, `γ̃_n`, `Δ_n`; needs `n + 1 <= N`.
    pub fn ttrr_modified(&self, n: usize) -> Result<TtrrMod<T>> {
        let max = self.fam.degree_max();
        if n + 1 > max {
            return Err(Error::DegreeOutOfRange { n: n + 1, max });
        }
        let (beta, gamma) = self.fam.recurrence(n)?;
        let cur = self.boundary(n)?;
        let next = self.boundary(n + 1)?;
        let d2n = self.fam.d2(n)?;
        let (mut t0, mut tn) = (
            -div(&(next.r0.clone() * &self.fam.boundary_0(n)?), &d2n, "beta~_n")?,
            -div(&(next.r_n.clone() * &self.fam.boundary_n(n)?), &d2n, "beta~_n")?,
        );
        if n > 0 {
            let d2p = self.fam.d2(n - 1)?;
            t0 = t0 + &div(&(cur.r0.clone() * &self.fam.boundary_0(n - 1)?), &d2p, "beta~_n")?;
            tn = tn + &div(&(cur.r_n.clone() * &self.fam.boundary_n(n - 1)?), &d2p, "beta~_n")?;
        }
        let beta_mod = beta - &(self.masses.a.clone() * &t0) - &(self.masses.b.clone() * &tn);
        let delta_n = self.delta_n(n)?;
        let gamma_mod = if n == 0 {
            T::zero()
        } else {
            let den = T::one() + &self.delta_n(n - 1)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter(format!("1 + Delta_{} = 0", n - 1)));
            }
            gamma * &div(&(T::one() + &delta_n), &den, "gamma~_n")?
        };
        Ok(TtrrMod { beta_mod, gamma_mod, delta_n })
    }
}

impl<'a, T: Scalar, F: OrthogonalFamily<T> + ?Sized> OrthogonalFamily<T> for KrallFamily<'a, T, F> {
    fn degree_max(&self) -> usize {
        self.fam.degree_max()
    }

    fn node(&self, s: i64) -> T {
        self.fam.node(s)
    }

    fn eval(&self, n: usize, s: i64) -> Result<T> {
        self.eval_krall(n, s)
    }

    fn d2(&self, n: usize) -> Result<T> {
        Ok(self.boundary(n)?.d2_mod.clone())
    }

    /// Base mass plus the point masses at the endpoints.
    fn mass(&self, s: i64) -> Result<T> {
        let mut m = self.fam.mass(s)?;
        if s == 0 {
            m = m + &self.masses.a;
        }
        if s == self.big() {
            m = m + &self.masses.b;
        }
        Ok(m)
    }

    fn boundary_0(&self, n: usize) -> Result<T> {
        Ok(self.boundary(n)?.r0.clone())
    }

    fn boundary_n(&self, n: usize) -> Result<T> {
        Ok(self.boundary(n)?.r_n.clone())
    }
}

/// The first representation's coefficients `Ā`, `B̄`, `C̄` at `(s,n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepCoeffs<T> {
    pub a_bar: T,
    pub b_bar: T,
    pub c_bar: T,
}

/// `φ(s) R̃_n(s)` from the basic-series form, or the reason it is unavailable.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesValue<T> {
    Value(T),
    /// `q^{β1}` undefined or a lower parameter of the series vanishes in range.
    Degenerate,
}

impl<'a, T: Scalar> KrallFamily<'a, T, QRacah<T>> {
    fn qp(&self, k: i64) -> T {
        self.fam.params().q_pow(k)
    }

    fn om(&self, c: &T, k: i64) -> T {
        T::one() - &(c.clone() * &self.qp(k))
    }

    /// `φ(s) = (1 - δγq^{N+1}q^s)(1 - δγq^{s+1})(q^{-s} - 1)(q^{-s} - q^{-N})`.
    pub fn phi_display(&self, s: i64) -> T {
        let p = self.fam.params();
        let big = p.n as i64;
        let dg = p.dg();
        self.om(&dg, big + 1 + s)
            * &self.om(&dg, s + 1)
            * &(self.qp(-s) - &T::one())
            * &(self.qp(-s) - &self.qp(-big))
    }

    /// `Ā = -A R̃_n(0) ϰ0 - B R̃_n(N) ϰN`, `B̄ = -A R̃_n(0) ϰ̄0`, `C̄ = -B R̃_n(N) ϰ̄N`.
    pub fn rep_coeffs(&self, s: i64, n: usize) -> Result<RepCoeffs<T>> {
        let bd = self.boundary(n)?;
        let c = KernelCoeffs::new(self.fam);
        let ar = self.masses.a.clone() * &bd.r0;
        let br = self.masses.b.clone() * &bd.r_n;
        Ok(RepCoeffs {
            a_bar: -(ar.clone() * &c.kappa0(s, n)?) - &(br.clone() * &c.kappa_n(s, n)?),
            b_bar: -(ar * &c.kappa0_bar(s, n)?),
            c_bar: -(br * &c.kappa_n_bar(s, n)?),
        })
    }

    /// `R_n + Ā R_{n-1} + B̄ ∇R_{n-1}/∇x + C̄ ΔR_{n-1}/Δx`.
    pub fn eval_rep1(&self, n: usize, s: i64) -> Result<T> {
        if n == 0 {
            return self.fam.eval_hyper(0, s);
        }
        let c = self.rep_coeffs(s, n)?;
        let lat = self.fam.lattice();
        let r = |t: i64| self.fam.eval_hyper(n - 1, t);
        let mut v = self.fam.eval_hyper(n, s)? + &(c.a_bar * &r(s)?);
        if !c.b_bar.is_zero() {
            v = v + &(c.b_bar * &lat.bwd_quot(r, s)?);
        }
        if !c.c_bar.is_zero() {
            v = v + &(c.c_bar * &lat.fwd_quot(r, s)?);
        }
        Ok(v)
    }

    /// Kernel representation with the compact endpoint kernels in place of the sums.
    pub fn eval_krall_compact(&self, n: usize, s: i64) -> Result<T> {
        if n == 0 {
            return self.fam.eval_hyper(0, s);
        }
        let bd = self.boundary(n)?;
        Ok(self.fam.eval_hyper(n, s)?
            - &(self.masses.a.clone() * &bd.r0 * &kernel_at0_compact(self.fam, n, s)?)
            - &(self.masses.b.clone() * &bd.r_n * &kernel_at_n_compact(self.fam, n, s)?))
    }

    /// `a(s;n) = A(s,n) + B(s,n) Θ(s,n)`.
    pub fn a_small(&self, s: i64, n: usize) -> Result<T> {
        Ok(self.a_sn(s, n)? + &(self.b_sn(s, n)? * &self.fam.theta(s, n)?))
    }

    /// `b(s;n) = B(s,n) Ξ(s,n)`.
    pub fn b_small(&self, s: i64, n: usize) -> Result<T> {
        Ok(self.b_sn(s, n)? * &self.fam.xi(s, n)?)
    }

    /// `φ(s) R̃_n(s) = a(s;n) R_n(s) + b(s;n) R_n(s+1)`.
    pub fn eval_rep3(&self, n: usize, s: i64) -> Result<T> {
        if n == 0 {
            return Ok(self.phi(s));
        }
        Ok(self.a_small(s, n)? * &self.fam.eval_hyper(n, s)?
            + &(self.b_small(s, n)? * &self.fam.eval_hyper(n, s + 1)?))
    }

    /// `ϑ_n = (1-αq^n)(1-βδq^n)(1-γq^n)(1-q^{-n}) / ((1-αβq^{2n-1})(1-αβq^{2n}))`.
    pub fn vartheta(&self, n: usize) -> Result<T> {
        let p = self.fam.params();
        let k = n as i64;
        let ab = p.ab();
        div(
            &(self.om(&p.alpha, k)
                * &self.om(&(p.beta.clone() * &p.delta), k)
                * &self.om(&p.gamma, k)
                * &self.om(&T::one(), -k)),
            &(self.om(&ab, 2 * k - 1) * &self.om(&ab, 2 * k)),
            "vartheta_n",
        )
    }

    /// `A(s,n) αβ q^n ϑ_n + B(s,n) q^{-n}`.
    fn beta1_den(&self, s: i64, n: usize) -> Result<T> {
        let k = n as i64;
        let p = self.fam.params();
        Ok(self.a_sn(s, n)? * &p.ab() * &self.qp(k) * &self.vartheta(n)?
            + &(self.b_sn(s, n)? * &self.qp(-k)))
    }

    /// `q^{β1} = (A ϑ_n + B) / (A αβ q^n ϑ_n + B q^{-n})`, or `None` when the denominator vanishes.
    pub fn q_beta1(&self, s: i64, n: usize) -> Result<Option<T>> {
        let den = self.beta1_den(s, n)?;
        if den.is_zero() {
            return Ok(None);
        }
        let num = self.a_sn(s, n)? * &self.vartheta(n)? + &self.b_sn(s, n)?;
        Ok(Some(div(&num, &den, "q^beta1")?))
    }

    /// `Π1(q^k)` in its defining (unfactored) form.
    pub fn pi1(&self, s: i64, n: usize, k: i64) -> Result<T> {
        let p = self.fam.params();
        let m = n as i64;
        let ab = p.ab();
        let first = div(
            &(self.om(&p.alpha, m)
                * &self.om(&(p.beta.clone() * &p.delta), m)
                * &self.om(&p.gamma, m)
                * &self.om(&ab, m + k)),
            &(self.om(&ab, 2 * m - 1) * &self.om(&ab, 2 * m)),
            "Pi1",
        )?;
        let second = div(&self.om(&T::one(), k - m), &self.om(&T::one(), -m), "Pi1")?;
        Ok(self.a_sn(s, n)? * &first + &(self.b_sn(s, n)? * &second))
    }

    /// `Π1(q^k) = -(A αβ q^n ϑ_n + B q^{-n}) (q^k - q^{β1}) / (1 - q^{-n})`.
    pub fn pi1_factored(&self, s: i64, n: usize, k: i64) -> Result<Option<T>> {
        let Some(qb) = self.q_beta1(s, n)? else {
            return Ok(None);
        };
        let lead = -div(&self.beta1_den(s, n)?, &self.om(&T::one(), -(n as i64)), "Pi1")?;
        Ok(Some(lead * &(self.qp(k) - &qb)))
    }

    /// `D_n(s) = -Λ'_{n-1} (1 - q^{β1}) (A αβ q^n ϑ_n + B q^{-n}) / (1 - q^{-n})`, with
    /// `Λ'_{n-1} = (αq, βδq, γq; q)_{n-1} / (αβq^n; q)_{n-1}`.
    pub fn d_n(&self, s: i64, n: usize) -> Result<Option<T>> {
        let Some(qb) = self.q_beta1(s, n)? else {
            return Ok(None);
        };
        let p = self.fam.params();
        let q = p.q();
        let lam = div(
            &qpochhammer_multi(&p.lower_params(), q, n - 1),
            &qpochhammer(&(p.ab() * &self.qp(n as i64)), q, n - 1),
            "D_n",
        )?;
        let den = self.beta1_den(s, n)?;
        Ok(Some(
            -(lam * &(T::one() - &qb) * &div(&den, &self.om(&T::one(), -(n as i64)), "D_n")?),
        ))
    }

    /// `φ(s) R̃_n(s) = D_n(s) 5φ4(q^{-n}, αβq^n, q^{-s}, δγq^{s+1}, q^{1-β1}; αq, βδq, γq, q^{-β1} | q; q)`.
    pub fn series_rep(&self, n: usize, s: i64) -> Result<SeriesValue<T>> {
        if n == 0 {
            return Err(Error::DegreeOutOfRange { n, max: self.fam.degree_max() });
        }
        self.check_degree(n)?;
        let Some(qb) = self.q_beta1(s, n)? else {
            return Ok(SeriesValue::Degenerate);
        };
        let Some(qb_inv) = qb.checked_div(&T::one()).and_then(|_| T::one().checked_div(&qb)) else {
            return Ok(SeriesValue::Degenerate);
        };
        let p = self.fam.params();
        let q = p.q().clone();
        let mut lower = p.lower_params().to_vec();
        lower.push(qb_inv.clone());
        let spec = HyperSpec::at_q(
            vec![
                self.qp(-(n as i64)),
                p.ab() * &self.qp(n as i64),
                self.qp(-s),
                p.dg() * &self.qp(s + 1),
                q.clone() * &qb_inv,
            ],
            lower,
            q,
            n + 1,
        );
        let sum = match basic_hyper_terminating(&spec) {
            Ok(v) => v,
            Err(Error::ZeroDenominator { .. }) => return Ok(SeriesValue::Degenerate),
            Err(e) => return Err(e),
        };
        let dn = self.d_n(s, n)?.expect("q^beta1 checked above");
        Ok(SeriesValue::Value(dn * &sum))
    }

    /// `A(s,n) Λ_n 4φ3(n) + B(s,n) Λ_{n-1} 4φ3(n-1)` with `Λ_n = (αq,βδq,γq;q)_n/(αβq^{n+1};q)_n`.
    pub fn series_rep_direct(&self, n: usize, s: i64) -> Result<T> {
        if n == 0 {
            return Err(Error::DegreeOutOfRange { n, max: self.fam.degree_max() });
        }
        Ok(self.a_sn(s, n)? * &self.fam.prefactor(n)? * &self.fam.phi43(n, s)?
            + &(self.b_sn(s, n)? * &self.fam.prefactor(n - 1)? * &self.fam.phi43(n - 1, s)?))
    }

    /// Same with the displayed `Λ_n = (αq,βδq,γq;q)_n/(αβq^n;q)_n`.
    pub fn series_rep_direct_displayed(&self, n: usize, s: i64) -> Result<T> {
        let p = self.fam.params();
        let q = p.q();
        let lam = |m: usize| {
            div(
                &qpochhammer_multi(&p.lower_params(), q, m),
                &qpochhammer(&(p.ab() * &self.qp(m as i64)), q, m),
                "Lambda_n",
            )
        };
        Ok(self.a_sn(s, n)? * &lam(n)? * &self.fam.phi43(n, s)?
            + &(self.b_sn(s, n)? * &lam(n - 1)? * &self.fam.phi43(n - 1, s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::lattice::QBase;
    use crate::qracah::{RacahInput, RacahParams, Truncation};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn canonical(n: usize) -> QRacah<Rational> {
        let base = QBase::from_sqrt(r(1, 2)).unwrap();
        let input = RacahInput { alpha: Some(r(1, 5)), beta: r(1, 7), gamma: None, delta: Some(r(1, 3)) };
        QRacah::new(RacahParams::new(base, input, n, Truncation::GammaQ).unwrap())
    }

    fn masses() -> MassConfig<Rational> {
        MassConfig::new(r(1, 10), r(1, 20))
    }

    #[test]
    fn identity_modification() {
        let f = canonical(4);
        let k = KrallFamily::new(&f, MassConfig::none()).unwrap();
        for n in 0..=4 {
            let b = k.boundary(n).unwrap();
            assert_eq!(b.r0, f.eval_hyper(n, 0).unwrap());
            assert_eq!(b.r_n, f.eval_hyper(n, 4).unwrap());
            assert_eq!(b.kappa_det, Rational::one());
            assert_eq!(b.d2_mod, f.d2(n).unwrap());
            for s in 0..=4 {
                assert_eq!(k.eval_krall(n, s).unwrap(), f.eval_hyper(n, s).unwrap());
                assert_eq!(k.a_sn(s, n).unwrap(), k.phi(s));
                assert!(k.b_sn(s, n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn self_consistency_and_orthogonality() {
        let f = canonical(4);
        let k = KrallFamily::new(&f, masses()).unwrap();
        for n in 0..=4usize {
            assert_eq!(k.eval_krall(n, 0).unwrap(), k.boundary(n).unwrap().r0);
            assert_eq!(k.eval_krall(n, 4).unwrap(), k.boundary(n).unwrap().r_n);
            for m in 0..=4usize {
                let mut acc = Rational::zero();
                for s in 0..=4 {
                    acc += k.eval_krall(n, s).unwrap() * k.eval_krall(m, s).unwrap() * k.mass(s).unwrap();
                }
                let expect = if n == m { k.d2(n).unwrap() } else { Rational::zero() };
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn phi_forms_agree() {
        let f = canonical(4);
        let k = KrallFamily::new(&f, masses()).unwrap();
        for s in -1..=5 {
            assert_eq!(k.phi(s), k.phi_display(s));
        }
        assert!(k.phi(0).is_zero() && k.phi(4).is_zero());
    }

    #[test]
    fn representations_agree() {
        let f = canonical(4);
        let k = KrallFamily::new(&f, masses()).unwrap();
        for n in 1..=4usize {
            for s in 0..=4i64 {
                let base = k.eval_krall(n, s).unwrap();
                let phi_r = k.phi(s) * &base;
                assert_eq!(k.eval_rep1(n, s).unwrap(), base);
                assert_eq!(k.eval_krall_compact(n, s).unwrap(), base);
                assert_eq!(k.eval_rep2(n, s).unwrap(), phi_r);
                assert_eq!(k.eval_rep3(n, s).unwrap(), phi_r);
                assert_eq!(k.series_rep_direct(n, s).unwrap(), phi_r);
                match k.series_rep(n, s).unwrap() {
                    SeriesValue::Value(v) => assert_eq!(v, phi_r),
                    SeriesValue::Degenerate => assert!(s == 0 || s == 4),
                }
            }
        }
    }

    #[test]
    fn pi1_factorisation() {
        let f = canonical(4);
        let k = KrallFamily::new(&f, masses()).unwrap();
        for n in 1..=4usize {
            for s in 1..4i64 {
                for j in 0..=n as i64 {
                    assert_eq!(Some(k.pi1(s, n, j).unwrap()), k.pi1_factored(s, n, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn modified_recurrence() {
        let f = canonical(5);
        let k = KrallFamily::new(&f, masses()).unwrap();
        for n in 0..5usize {
            let t = k.ttrr_modified(n).unwrap();
            for s in 0..=5i64 {
                let lhs = f.lattice().at(s) * k.eval_krall(n, s).unwrap();
                let mut rhs = k.eval_krall(n + 1, s).unwrap() + t.beta_mod.clone() * k.eval_krall(n, s).unwrap();
                if n > 0 {
                    rhs += t.gamma_mod.clone() * k.eval_krall(n - 1, s).unwrap();
                }
                assert_eq!(lhs, rhs);
            }
            if n > 0 {
                assert_eq!(t.gamma_mod, k.d2(n).unwrap() / k.d2(n - 1).unwrap());
            }
        }
    }

    #[test]
    fn one_mass_matches_two_mass_at_b_zero() {
        let f = canonical(4);
        let k = KrallFamily::new(&f, masses().one_mass()).unwrap();
        for n in 0..=4usize {
            assert_eq!(k.boundary_one_mass(n).unwrap(), k.boundary(n).unwrap().r0);
            for s in 0..=4i64 {
                let gn = f.lattice().at(s) - f.lattice().at(4);
                assert_eq!(k.a_sn(s, n).unwrap(), k.a_sn_one(s, n).unwrap() * &gn);
                assert_eq!(k.b_sn(s, n).unwrap(), k.b_sn_one(s, n).unwrap() * &gn);
                assert_eq!(k.eval_rep2_one(n, s).unwrap(), k.phi_one(s) * k.eval_krall(n, s).unwrap());
            }
        }
    }

    #[test]
    fn negative_mass_hits_zero_kappa() {
        let f = canonical(4);
        let k00 = crate::kernels::kernel_sum(&f, 0, 0, 0).unwrap();
        let a = -(Rational::one() / k00);
        let m = MassConfig::new(a, Rational::zero());
        assert_eq!(KrallFamily::new(&f, m).unwrap_err(), Error::NonExistent { degree: 1 });
    }
}
