//! Acceptance run: one line per criterion, nonzero exit on any failure.
//!
//! Exact criteria run the library suites on the canonical set for N = 3..6 and compare the Krall
//! family against a Stieltjes recurrence computed here from node values and masses alone.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qracah_krall::config::Config;
use qracah_krall::exec::Exec;
use qracah_krall::krall::{KrallFamily, MassConfig};
use qracah_krall::lattice::QBase;
use qracah_krall::qracah::{QRacah, RacahInput, RacahParams, Truncation};
use qracah_krall::report::{CheckRecord, Status};
use qracah_krall::verify::{self, existence_counterexample, Suite, VerifyOptions};
use qracah_krall::{OrthogonalFamily, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NS: [usize; 4] = [3, 4, 5, 6];
const SWEEP_DRAWS: usize = 24;
const LIMIT_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into() }
    }
}

/// All suite records for one `N`, keyed by id.
struct Run {
    n: usize,
    records: BTreeMap<String, CheckRecord>,
    elapsed: BTreeMap<&'static str, Duration>,
}

fn run_suites(n: usize) -> Run {
    let cfg = Config::canonical(n).expect("canonical set is admissible");
    let opts = VerifyOptions { exec: Exec::Parallel, nmax: None };
    let mut records = BTreeMap::new();
    let mut elapsed = BTreeMap::new();
    for s in Suite::EACH {
        // Limit families have their own fixed N; run them once.
        if s == Suite::Limits && n != 4 {
            continue;
        }
        let t = Instant::now();
        let rep = verify::run(s, &cfg, &opts);
        elapsed.insert(s.name(), t.elapsed());
        for r in rep.records {
            records.insert(r.id.clone(), r);
        }
    }
    Run { n, records, elapsed }
}

/// Every listed id (or id prefix ending in `.`) is present and passes in every run.
fn require(runs: &[Run], ids: &[&str]) -> Outcome {
    let mut bad = Vec::new();
    let mut seen = 0;
    for run in runs {
        for id in ids {
            let hits: Vec<&CheckRecord> = if id.ends_with('.') {
                run.records.values().filter(|r| r.id.starts_with(id)).collect()
            } else {
                run.records.get(*id).into_iter().collect()
            };
            if hits.is_empty() {
                bad.push(format!("N={} {id}: missing", run.n));
            }
            for r in hits {
                seen += 1;
                if r.status != Status::Pass {
                    bad.push(format!("N={} {}: {:?} {}", run.n, r.id, r.status, r.note.clone().unwrap_or_default()));
                }
            }
        }
    }
    if bad.is_empty() {
        Outcome::new(true, format!("{seen} records over N={:?}", runs.iter().map(|r| r.n).collect::<Vec<_>>()))
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn and(a: Outcome, b: Outcome) -> Outcome {
    Outcome::new(a.ok && b.ok, format!("{}; {}", a.detail, b.detail))
}

// ---- independent oracle -----------------------------------------------------------------------

/// Monic polynomials by the Stieltjes procedure on the nodes `xs` with weights `ws`.
struct Stieltjes {
    values: Vec<Vec<Rational>>,
    norms: Vec<Rational>,
    beta: Vec<Rational>,
    gamma: Vec<Rational>,
}

fn stieltjes(xs: &[Rational], ws: &[Rational], nmax: usize) -> Option<Stieltjes> {
    let dot = |f: &[Rational], g: &[Rational], x: bool| -> Rational {
        let mut acc = Rational::zero();
        for i in 0..xs.len() {
            let mut t = f[i].clone() * &g[i] * &ws[i];
            if x {
                t = t * &xs[i];
            }
            acc += t;
        }
        acc
    };
    let mut values = vec![vec![Rational::one(); xs.len()]];
    let mut norms = Vec::new();
    let mut beta = Vec::new();
    let mut gamma = Vec::new();
    for n in 0..=nmax {
        let p = values[n].clone();
        let h = dot(&p, &p, false);
        if h.is_zero() {
            return None;
        }
        let b = dot(&p, &p, true).checked_div(&h)?;
        let g = if n == 0 { Rational::zero() } else { h.checked_div(&norms[n - 1])? };
        let next: Vec<Rational> = (0..xs.len())
            .map(|i| {
                let prev = if n == 0 { Rational::zero() } else { g.clone() * &values[n - 1][i] };
                (xs[i].clone() - &b) * &p[i] - prev
            })
            .collect();
        norms.push(h);
        beta.push(b);
        gamma.push(g);
        values.push(next);
    }
    values.truncate(nmax + 1);
    Some(Stieltjes { values, norms, beta, gamma })
}

fn stieltjes_matches(n_big: usize) -> Outcome {
    let cfg = Config::canonical(n_big).expect("canonical set");
    let fam = cfg.family();
    let kf = KrallFamily::new(&fam, cfg.masses.clone()).expect("Krall family exists");
    let bi = n_big as i64;
    let xs: Vec<Rational> = (0..=bi).map(|s| fam.node(s)).collect();
    let mut ws: Vec<Rational> = (0..=bi).map(|s| fam.mass(s).expect("node in range")).collect();
    ws[0] += &cfg.masses.a;
    ws[n_big] += &cfg.masses.b;
    let Some(st) = stieltjes(&xs, &ws, n_big) else {
        return Outcome::new(false, format!("N={n_big}: Stieltjes hit a zero norm"));
    };
    let mut ok = true;
    for n in 0..=n_big {
        for s in 0..=n_big {
            ok &= kf.eval_krall(n, s as i64).ok().as_ref() == Some(&st.values[n][s]);
        }
        ok &= kf.d2(n).ok().as_ref() == Some(&st.norms[n]);
        let rec = if n < n_big { kf.ttrr_modified(n).map(|t| (t.beta_mod, t.gamma_mod)) } else { kf.recurrence(n) };
        ok &= rec.ok() == Some((st.beta[n].clone(), st.gamma[n].clone()));
    }
    Outcome::new(ok, format!("N={n_big}"))
}

// ---- existence sweep --------------------------------------------------------------------------

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(2..=9i64);
    Rational::new(rng.gen_range(1..=2 * den), den).expect("positive denominator")
}

/// A positive-definite admissible draw: every base mass `ρΔx` is positive.
fn positive_draw(rng: &mut ChaCha8Rng) -> Option<QRacah<Rational>> {
    let v = [(1, 2), (1, 3), (2, 3), (3, 5), (3, 4)][rng.gen_range(0..5)];
    let base = QBase::from_sqrt(Rational::new(v.0, v.1).ok()?).ok()?;
    let n = rng.gen_range(2..=5usize);
    let (alpha, delta) = (small_rational(rng), small_rational(rng));
    let beta = small_rational(rng);
    let input = RacahInput { alpha: Some(alpha), beta, gamma: None, delta: Some(delta) };
    let fam = QRacah::new(RacahParams::new(base, input, n, Truncation::GammaQ).ok()?);
    let positive = (0..=n as i64).all(|s| fam.mass(s).map(|m| m.is_positive()).unwrap_or(false));
    positive.then_some(fam)
}

fn existence_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0015);
    let mut draws = 0;
    let mut tries = 0;
    let mut bad = Vec::new();
    while draws < SWEEP_DRAWS && tries < 20_000 {
        tries += 1;
        let Some(fam) = positive_draw(&mut rng) else { continue };
        draws += 1;
        let masses = MassConfig::new(small_rational(&mut rng), small_rational(&mut rng));
        match KrallFamily::new(&fam, masses.clone()) {
            Ok(kf) => {
                for n in 0..=fam.degree_max() {
                    if kf.boundary(n).map(|b| b.kappa_det.is_zero()).unwrap_or(true) {
                        bad.push(format!("draw {draws}: kappa vanishes at n={n}"));
                    }
                }
            }
            Err(e) => bad.push(format!("draw {draws}: {e} (A={}, B={})", masses.a, masses.b)),
        }
    }
    let counter = Config::canonical(4).map(|c| existence_counterexample(&c.family()));
    let counter_ok = matches!(&counter, Ok(r) if r.status == Status::Pass);
    let ok = draws >= 20 && bad.is_empty() && counter_ok;
    let mut detail = format!("{draws} positive-definite draws ({tries} tried), counterexample {}", if counter_ok { "detected" } else { "missed" });
    if !bad.is_empty() {
        detail += &format!("; {}", bad.join("; "));
    }
    Outcome::new(ok, detail)
}

// ---- criteria ---------------------------------------------------------------------------------

fn timed(runs: &[Run], suite: &str, budget: Duration) -> Outcome {
    let worst = runs.iter().filter_map(|r| r.elapsed.get(suite)).max().copied().unwrap_or_default();
    Outcome::new(worst <= budget, format!("slowest {suite} run {:.2}s", worst.as_secs_f64()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let runs: Vec<Run> = NS.iter().map(|&n| run_suites(n)).collect();
    let limit_run = std::slice::from_ref(runs.iter().find(|r| r.n == 4).expect("N=4 run"));

    let oracle = NS.iter().map(|&n| stieltjes_matches(n)).fold(Outcome::new(true, "stieltjes"), and);

    let criteria: Vec<(&str, Outcome)> = vec![
        ("base orthogonality", and(require(&runs, &["base.orthogonality"]), timed(&runs, "orthogonality", Duration::from_secs(60)))),
        ("modified orthogonality", require(&runs, &["krall.orthogonality", "krall.existence"])),
        (
            "representation agreement",
            require(
                &runs,
                &["rep.kernel_compact", "rep.rep1", "rep.rep2", "rep.rep3", "rep.series_5phi4", "rep.direct_two_4phi3", "rep.phi_display"],
            ),
        ),
        ("oracle equivalence", and(require(&runs, &["oracle.base.", "oracle.krall."]), oracle)),
        (
            "kernel identities",
            require(&runs, &["kernel.sum_vs_cd", "kernel.compact_at_0", "kernel.compact_at_N", "kernel.reproducing"]),
        ),
        ("theta/xi identity", require(&runs, &["rep.theta_xi"])),
        ("degree claims", require(&runs, &["degree.phi_krall", "degree.phi", "degree.a_sn", "degree.b_sn"])),
        (
            "monic structure",
            require(&runs, &["ttrr.monic.base", "ttrr.monic.krall", "ttrr.gamma_ratio.base", "ttrr.gamma_ratio.krall", "ttrr.base", "ttrr.krall"]),
        ),
        ("one-mass consistency", require(&runs, &["one_mass."])),
        (
            "beta -> 0 limit",
            require(limit_run, &["beta0.", "dual.orthogonality", "dual.krall.orthogonality", "dual.oracle."]),
        ),
        (
            "q^delta -> 0 limit",
            and(require(limit_run, &["qdelta.", "qhahn.orthogonality", "qhahn.krall.orthogonality"]), timed(limit_run, "limits", LIMIT_BUDGET)),
        ),
        (
            "q -> 1 limit",
            and(require(limit_run, &["q1.", "classical.krall.oracle"]), timed(limit_run, "limits", LIMIT_BUDGET)),
        ),
        ("weight prefactor", require(&runs[..], &["weight.prefactor"])),
        ("difference-equation probe", and(require(&runs, &["sode.convention"]), recorded(&runs, "sode.phi_relation"))),
        ("existence guard", existence_sweep()),
    ];

    let mut failed = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        if !o.ok {
            failed += 1;
        }
        println!("criterion {:>2} {:<26} {}  ({})", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    let total = start.elapsed();
    let budget_ok = total <= Duration::from_secs(300);
    println!("total runtime {:.1}s ({})", total.as_secs_f64(), if budget_ok { "within 5 min" } else { "over 5 min" });
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 && budget_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn recorded(runs: &[Run], id: &str) -> Outcome {
    let ok = runs.iter().all(|r| r.records.get(id).is_some_and(|c| c.status == Status::Recorded && c.note.is_some()));
    Outcome::new(ok, format!("{id} recorded"))
}
