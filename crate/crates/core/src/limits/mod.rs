//! Limit families and the harness that checks the q-Racah(-Krall) family converges to them.
//!
//! `β → 0` is an exact substitution. `q^δ → 0` and `q → 1` are sequences; a check passes when the
//! deviation decreases strictly along the sequence (and, for `q^δ`, ends below a threshold).

pub mod classical;
pub mod dual_qhahn;
pub mod qhahn;

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{Rational, Scalar};
use crate::exec::Exec;
use crate::family::OrthogonalFamily;
use crate::kernels::kernel_sum;
use crate::krall::{KrallFamily, MassConfig};
use crate::lattice::QBase;
use crate::oracle::{gram_schmidt_monic, DiscreteMeasure};
use crate::qracah::{QRacah, RacahInput, RacahParams, Truncation};
use crate::report::{CheckRecord, VerificationReport};
use crate::verify::{check_oracle, check_orthogonality};

pub use classical::{RacahClassical, RacahClassicalParams};
pub use dual_qhahn::{DualQHahn, DualQHahnParams};
pub use qhahn::{QHahn, QHahnParams};

/// Relative deviation at the last `q^δ` point required to pass.
pub const QDELTA_THRESHOLD: f64 = 1e-6;
/// Relative tolerance against the floating oracle for the classical Krall family.
pub const CLASSICAL_ORACLE_TOL: f64 = 1e-9;

/// Dual q-Hahn side of the `β → 0` limit (`αq = q^{-N}` on the q-Racah side).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualSetup {
    pub v: Rational,
    pub gamma: Rational,
    pub delta: Rational,
    #[serde(rename = "N")]
    pub n: usize,
}

impl Default for DualSetup {
    fn default() -> Self {
        DualSetup { v: r(1, 2), gamma: r(1, 5), delta: r(1, 3), n: 4 }
    }
}

/// q-Hahn side of the `q^δ → 0` limit; `epsilons` stand for `q^δ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QHahnSetup {
    pub v: Rational,
    pub mu: Rational,
    pub nu: Rational,
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilons: Vec<Rational>,
}

impl Default for QHahnSetup {
    fn default() -> Self {
        let eps = (1..=4).map(|k| Rational::one() / Rational::from_integer(100).pow(k).unwrap()).collect();
        QHahnSetup { v: r(9, 10), mu: r(1, 3), nu: r(1, 5), n: 4, epsilons: eps }
    }
}

/// Classical side of the `q → 1` limit; `q = 1 - 2^{-k}` for each `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalSetup {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub ks: Vec<u32>,
}

impl Default for ClassicalSetup {
    fn default() -> Self {
        ClassicalSetup { alpha: 0.5, beta: 0.3, delta: 0.7, n: 4, ks: (3..=10).collect() }
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

/// `|a - b| / |b|`, or `|a - b|` when `b = 0`.
pub fn rel_dev<T: Scalar>(a: &T, b: &T) -> f64 {
    let d = (a.clone() - b).abs();
    match d.checked_div(&b.abs()) {
        Some(q) => q.to_f64(),
        None => d.to_f64(),
    }
}

pub fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn sequence_note<L: std::fmt::Display>(labels: &[L], devs: &[f64]) -> String {
    labels
        .iter()
        .zip(devs)
        .map(|(l, d)| format!("{l}: {d:.3e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// The q-Racah family at `β = 0` with `αq = q^{-N}`.
pub fn qracah_beta_zero(setup: &DualSetup) -> Result<QRacah<Rational>> {
    let base = QBase::from_sqrt(setup.v.clone())?;
    let input = RacahInput {
        alpha: None,
        beta: Rational::zero(),
        gamma: Some(setup.gamma.clone()),
        delta: Some(setup.delta.clone()),
    };
    Ok(QRacah::new(RacahParams::new(base, input, setup.n, Truncation::AlphaQ)?))
}

pub fn dual_family(setup: &DualSetup) -> Result<DualQHahn<Rational>> {
    let base = QBase::from_sqrt(setup.v.clone())?;
    Ok(DualQHahn::new(DualQHahnParams::new(base, setup.gamma.clone(), setup.delta.clone(), setup.n)?))
}

fn exact_grid<T: Scalar>(
    id: &str,
    nmax: usize,
    big: usize,
    exec: Exec,
    f: impl Fn(usize, i64) -> Result<(T, T)> + Sync + Send,
) -> CheckRecord {
    let pts: Vec<(usize, i64)> = (0..=nmax).flat_map(|n| (0..=big as i64).map(move |s| (n, s))).collect();
    let out = exec.map(&pts, |&(n, s)| f(n, s).map(|(a, b)| a == b));
    match out.into_iter().collect::<Result<Vec<_>>>() {
        Ok(v) => CheckRecord::exact(id, v.len(), v.iter().all(|&b| b)),
        Err(e) => CheckRecord::errored(id, &e),
    }
}

/// Exact `β = 0` reduction of the base and Krall families to the dual q-Hahn ones.
pub fn limit_beta_to_zero_check(
    setup: &DualSetup,
    masses: &MassConfig<Rational>,
    nmax: usize,
    exec: Exec,
) -> VerificationReport {
    let mut rep = VerificationReport::new("limits.beta_to_zero", serde_json::json!({ "dual": setup, "masses": masses }));
    let (rac, dual) = match (qracah_beta_zero(setup), dual_family(setup)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            rep.push(CheckRecord::errored("beta0.setup", &e));
            return rep;
        }
    };
    let big = setup.n;
    let nmax = nmax.min(big);
    rep.push(exact_grid("beta0.values", nmax, big, exec, |n, s| Ok((rac.eval(n, s)?, dual.eval(n, s)?))));
    rep.push(exact_grid("beta0.norms", nmax, 0, exec, |n, _| Ok((rac.d2(n)?, dual.d2(n)?))));
    rep.push(exact_grid("beta0.masses", 0, big, exec, |_, s| Ok((rac.mass(s)?, dual.mass(s)?))));
    rep.push(check_orthogonality("dual.orthogonality", &dual, nmax, exec).with_note(
        "displayed d_n^2, sign-alternating through (q^{-N};q)_n, is the squared norm of the displayed weight",
    ));
    match (KrallFamily::new(&rac, masses.clone()), KrallFamily::new(&dual, masses.clone())) {
        (Ok(kr), Ok(kd)) => {
            rep.push(exact_grid("beta0.krall.values", nmax, big, exec, |n, s| {
                Ok((kr.eval_krall(n, s)?, kd.eval_krall(n, s)?))
            }));
            rep.push(exact_grid("beta0.krall.norms", nmax, 0, exec, |n, _| Ok((kr.d2(n)?, kd.d2(n)?))));
            rep.push(check_orthogonality("dual.krall.orthogonality", &kd, nmax, exec));
            rep.extend_records(check_oracle("dual.oracle", &dual, &kd, masses, nmax));
        }
        (Err(e), _) | (_, Err(e)) => rep.push(CheckRecord::errored("beta0.krall", &e)),
    }
    rep
}

pub fn qhahn_family(setup: &QHahnSetup) -> Result<QHahn<Rational>> {
    let base = QBase::from_sqrt(setup.v.clone())?;
    QHahn::new(QHahnParams::new(base, setup.mu.clone(), setup.nu.clone(), setup.n)?)
}

/// The transformed q-Racah family: `α = ν`, `β = μ`, `γq = q^{-N}`, `δ = ε`.
pub fn qracah_qdelta(setup: &QHahnSetup, eps: &Rational) -> Result<QRacah<Rational>> {
    let base = QBase::from_sqrt(setup.v.clone())?;
    let input = RacahInput {
        alpha: Some(setup.nu.clone()),
        beta: setup.mu.clone(),
        gamma: None,
        delta: Some(eps.clone()),
    };
    Ok(QRacah::new(RacahParams::new(base, input, setup.n, Truncation::GammaQ)?))
}

/// Maximal relative deviations at one `q^δ`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct QDeltaDeviation {
    pub values: f64,
    pub boundary: f64,
    pub norms: f64,
    pub masses: f64,
    pub kernels: f64,
    pub krall_values: f64,
    pub krall_norms: f64,
    /// `R_0 = h_0 = 1` and `R̃_0 = h̃_0 = 1`.
    pub degree_zero_exact: bool,
}

fn qdelta_point(
    setup: &QHahnSetup,
    hahn: &QHahn<Rational>,
    hk: &KrallFamily<'_, Rational, QHahn<Rational>>,
    masses: &MassConfig<Rational>,
    nmax: usize,
    eps: &Rational,
) -> Result<QDeltaDeviation> {
    let rac = qracah_qdelta(setup, eps)?;
    let rk = KrallFamily::new(&rac, masses.clone())?;
    let big = setup.n as i64;
    let mut d = QDeltaDeviation { degree_zero_exact: true, ..Default::default() };
    for n in 0..=nmax {
        for s in 0..=big {
            let (a, b) = (rac.eval(n, s)?, hahn.eval(n, s)?);
            d.values = d.values.max(rel_dev(&a, &b));
            if s == 0 || s == big {
                d.boundary = d.boundary.max(rel_dev(&a, &b));
            }
            let (ka, kb) = (rk.eval_krall(n, s)?, hk.eval_krall(n, s)?);
            d.krall_values = d.krall_values.max(rel_dev(&ka, &kb));
            if n == 0 && (a != b || ka != kb || a != Rational::one()) {
                d.degree_zero_exact = false;
            }
            for t in 0..=big {
                d.kernels = d.kernels.max(rel_dev(&kernel_sum(&rac, n, s, t)?, &kernel_sum(hahn, n, s, t)?));
            }
        }
        d.norms = d.norms.max(rel_dev(&rac.d2(n)?, &hahn.d2(n)?));
        d.krall_norms = d.krall_norms.max(rel_dev(&rk.d2(n)?, &hk.d2(n)?));
    }
    for s in 0..=big {
        d.masses = d.masses.max(rel_dev(&rac.mass(s)?, &hahn.mass(s)?));
    }
    Ok(d)
}

/// Deviation of the transformed q-Racah(-Krall) data from the q-Hahn(-Krall) data along `q^δ`.
pub fn limit_qdelta_to_zero_check(
    setup: &QHahnSetup,
    masses: &MassConfig<Rational>,
    nmax: usize,
    exec: Exec,
) -> VerificationReport {
    let mut rep = VerificationReport::new("limits.qdelta_to_zero", serde_json::json!({ "qhahn": setup, "masses": masses }));
    let nmax = nmax.min(setup.n);
    let hahn = match qhahn_family(setup) {
        Ok(h) => h,
        Err(e) => {
            rep.push(CheckRecord::errored("qhahn.setup", &e));
            return rep;
        }
    };
    rep.push(check_orthogonality("qhahn.orthogonality", &hahn, nmax, exec));
    let hk = match KrallFamily::new(&hahn, masses.clone()) {
        Ok(k) => k,
        Err(e) => {
            rep.push(CheckRecord::errored("qhahn.krall", &e));
            return rep;
        }
    };
    rep.push(check_orthogonality("qhahn.krall.orthogonality", &hk, nmax, exec));
    let decreasing_eps = setup.epsilons.windows(2).all(|w| w[1] < w[0]) && setup.epsilons.iter().all(|e| e.is_positive());
    if !decreasing_eps || setup.epsilons.is_empty() {
        rep.push(CheckRecord::exact("qdelta.epsilons", setup.epsilons.len(), false).with_note("need a decreasing positive sequence"));
        return rep;
    }
    let points = exec.map(&setup.epsilons, |e| qdelta_point(setup, &hahn, &hk, masses, nmax, e));
    let devs = match points.into_iter().collect::<Result<Vec<_>>>() {
        Ok(d) => d,
        Err(e) => {
            rep.push(CheckRecord::errored("qdelta.sequence", &e));
            return rep;
        }
    };
    let labels: Vec<String> = setup.epsilons.iter().map(|e| format!("{:.0e}", e.to_f64())).collect();
    let grid = setup.epsilons.len() * (nmax + 1) * (setup.n + 1);
    let fields: [(&str, fn(&QDeltaDeviation) -> f64); 7] = [
        ("qdelta.values", |d| d.values),
        ("qdelta.boundary", |d| d.boundary),
        ("qdelta.norms", |d| d.norms),
        ("qdelta.masses", |d| d.masses),
        ("qdelta.kernels", |d| d.kernels),
        ("qdelta.krall_values", |d| d.krall_values),
        ("qdelta.krall_norms", |d| d.krall_norms),
    ];
    for (id, get) in fields {
        let seq: Vec<f64> = devs.iter().map(get).collect();
        let last = *seq.last().expect("nonempty");
        let ok = strictly_decreasing(&seq) && last < QDELTA_THRESHOLD;
        rep.push(CheckRecord::numeric(id, grid, ok, last).with_note(sequence_note(&labels, &seq)));
    }
    rep.push(CheckRecord::exact("qdelta.degree_zero", setup.epsilons.len(), devs.iter().all(|d| d.degree_zero_exact)));
    rep
}

pub fn classical_family(setup: &ClassicalSetup) -> Result<RacahClassical> {
    RacahClassical::new(RacahClassicalParams::new(setup.alpha, setup.beta, setup.delta, setup.n)?)
}

/// The q-Racah family with `q^α, q^β, q^δ` and `γq = q^{-N}` in floating point.
pub fn qracah_near_one(setup: &ClassicalSetup, q: f64) -> Result<QRacah<f64>> {
    let base = QBase::from_sqrt(q.sqrt())?;
    let input = RacahInput {
        alpha: Some(q.powf(setup.alpha)),
        beta: q.powf(setup.beta),
        gamma: None,
        delta: Some(q.powf(setup.delta)),
    };
    Ok(QRacah::new(RacahParams::new(base, input, setup.n, Truncation::GammaQ)?))
}

fn q_to_one_point(
    setup: &ClassicalSetup,
    cl: &RacahClassical,
    ck: &KrallFamily<'_, f64, RacahClassical>,
    masses: &MassConfig<f64>,
    nmax: usize,
    k: u32,
) -> Result<(f64, f64, bool)> {
    let q = 1.0 - 2f64.powi(-(k as i32));
    let rac = qracah_near_one(setup, q)?;
    let rk = KrallFamily::new(&rac, masses.clone())?;
    let (mut dv, mut dk) = (0.0f64, 0.0f64);
    let mut zero_ok = true;
    for n in 0..=nmax {
        let scale = (1.0 - q).powi(2 * n as i32);
        for s in 0..=setup.n as i64 {
            let a = rac.eval(n, s)? / scale;
            let ka = rk.eval_krall(n, s)? / scale;
            dv = dv.max(rel_dev(&a, &cl.eval(n, s)?));
            dk = dk.max(rel_dev(&ka, &ck.eval_krall(n, s)?));
            if n == 0 && (a != 1.0 || cl.eval(0, s)? != 1.0) {
                zero_ok = false;
            }
        }
    }
    Ok((dv, dk, zero_ok))
}

/// Deviation of the rescaled q-Racah(-Krall) values `R_n / (1-q)^{2n}` from the classical Racah(-Krall)
/// values along `q = 1 - 2^{-k}`; also checks the classical Krall family against a floating oracle.
pub fn limit_q_to_one_check(
    setup: &ClassicalSetup,
    masses: &MassConfig<f64>,
    nmax: usize,
    exec: Exec,
) -> VerificationReport {
    let mut rep = VerificationReport::new("limits.q_to_one", serde_json::json!({ "classical": setup, "masses": masses }));
    let nmax = nmax.min(setup.n);
    let cl = match classical_family(setup) {
        Ok(c) => c,
        Err(e) => {
            rep.push(CheckRecord::errored("classical.setup", &e));
            return rep;
        }
    };
    let ck = match KrallFamily::new(&cl, masses.clone()) {
        Ok(k) => k,
        Err(e) => {
            rep.push(CheckRecord::errored("classical.krall", &e));
            return rep;
        }
    };
    rep.push(classical_oracle_record(&cl, &ck, masses));
    if setup.ks.is_empty() || !setup.ks.windows(2).all(|w| w[0] < w[1]) {
        rep.push(CheckRecord::exact("q1.sequence", setup.ks.len(), false).with_note("need increasing k"));
        return rep;
    }
    let pts = exec.map(&setup.ks, |&k| q_to_one_point(setup, &cl, &ck, masses, nmax, k));
    let pts = match pts.into_iter().collect::<Result<Vec<_>>>() {
        Ok(p) => p,
        Err(e) => {
            rep.push(CheckRecord::errored("q1.sequence", &e));
            return rep;
        }
    };
    let labels: Vec<String> = setup.ks.iter().map(|k| format!("k={k}")).collect();
    let grid = setup.ks.len() * (nmax + 1) * (setup.n + 1);
    for (id, seq) in [
        ("q1.values", pts.iter().map(|p| p.0).collect::<Vec<_>>()),
        ("q1.krall_values", pts.iter().map(|p| p.1).collect::<Vec<_>>()),
    ] {
        let last = *seq.last().expect("nonempty");
        rep.push(CheckRecord::numeric(id, grid, strictly_decreasing(&seq), last).with_note(sequence_note(&labels, &seq)));
    }
    rep.push(CheckRecord::exact("q1.degree_zero", setup.ks.len(), pts.iter().all(|p| p.2)));
    rep
}

fn classical_oracle_record(
    cl: &RacahClassical,
    ck: &KrallFamily<'_, f64, RacahClassical>,
    masses: &MassConfig<f64>,
) -> CheckRecord {
    let id = "classical.krall.oracle";
    let big = cl.degree_max();
    let run = || -> Result<(f64, usize)> {
        let mu = DiscreteMeasure::from_family(cl)?.with_endpoint_masses(masses.a, masses.b);
        let gs = gram_schmidt_monic(&mu, big)?;
        let mut dev = 0.0f64;
        let mut grid = 0;
        for n in 0..=big {
            for s in 0..=big {
                dev = dev.max(rel_dev(&ck.eval_krall(n, s as i64)?, &gs.values[n][s]));
                grid += 1;
            }
            dev = dev.max(rel_dev(&ck.d2(n)?, &gs.norms[n]));
        }
        Ok((dev, grid))
    };
    match run() {
        Ok((dev, grid)) => CheckRecord::numeric(id, grid, dev < CLASSICAL_ORACLE_TOL, dev),
        Err(e) => CheckRecord::errored(id, &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_zero_reduction_is_exact() {
        let m = MassConfig::new(r(1, 10), r(1, 20));
        let rep = limit_beta_to_zero_check(&DualSetup::default(), &m, 4, Exec::Sequential);
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn strictly_decreasing_detects_plateaus() {
        assert!(strictly_decreasing(&[3.0, 2.0, 1.0]));
        assert!(!strictly_decreasing(&[3.0, 3.0, 1.0]));
    }

    #[test]
    fn rel_dev_handles_zero_target() {
        assert_eq!(rel_dev(&r(1, 2), &Rational::zero()), 0.5);
        assert_eq!(rel_dev(&r(3, 2), &Rational::one()), 0.5);
    }
}
