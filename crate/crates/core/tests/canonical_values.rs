//! Frozen values on the canonical set (N = 4), each re-derived here by a Stieltjes recurrence
//! on the node values and masses, independent of the library's series and Krall formulas.

use qracah_krall::config::Config;
use qracah_krall::kernels::kernel_sum;
use qracah_krall::krall::KrallFamily;
use qracah_krall::oracle::DiscreteMeasure;
use qracah_krall::{OrthogonalFamily, Rational};

const R2_AT_1: &str = "21855458625/647071";
const KRALL2_AT_1: &str = "865354605940273183098/19331744948798545";

/// Values `p_n(x_i)` of the monic orthogonal polynomials for weights `ws` on nodes `xs`.
fn stieltjes(xs: &[Rational], ws: &[Rational], nmax: usize) -> Vec<Vec<Rational>> {
    let ip = |f: &[Rational], g: &[Rational], weight_x: bool| {
        let mut acc = Rational::zero();
        for i in 0..xs.len() {
            let t = f[i].clone() * &g[i] * &ws[i];
            acc += if weight_x { t * &xs[i] } else { t };
        }
        acc
    };
    let mut p: Vec<Vec<Rational>> = vec![vec![Rational::one(); xs.len()]];
    let mut prev_norm = Rational::one();
    for n in 0..nmax {
        let h = ip(&p[n], &p[n], false);
        let b = ip(&p[n], &p[n], true).checked_div(&h).unwrap();
        let g = if n == 0 { Rational::zero() } else { h.checked_div(&prev_norm).unwrap() };
        let next = (0..xs.len())
            .map(|i| {
                let back = if n == 0 { Rational::zero() } else { g.clone() * &p[n - 1][i] };
                (xs[i].clone() - &b) * &p[n][i] - back
            })
            .collect();
        prev_norm = h;
        p.push(next);
    }
    p
}

fn canonical() -> Config {
    Config::canonical(4).unwrap()
}

#[test]
fn base_value_matches_frozen_and_oracle() {
    let cfg = canonical();
    let fam = cfg.family();
    let xs: Vec<Rational> = (0..=4).map(|s| fam.node(s)).collect();
    let ws: Vec<Rational> = (0..=4).map(|s| fam.mass(s).unwrap()).collect();
    let p = stieltjes(&xs, &ws, 2);
    let frozen: Rational = R2_AT_1.parse().unwrap();
    assert_eq!(p[2][1], frozen);
    assert_eq!(fam.eval(2, 1).unwrap(), frozen);
    assert_eq!(fam.eval_ttrr(2, &fam.node(1)).unwrap(), frozen);
}

#[test]
fn krall_value_matches_frozen_and_oracle() {
    let cfg = canonical();
    let fam = cfg.family();
    let kf = KrallFamily::new(&fam, cfg.masses.clone()).unwrap();
    let xs: Vec<Rational> = (0..=4).map(|s| fam.node(s)).collect();
    let mut ws: Vec<Rational> = (0..=4).map(|s| fam.mass(s).unwrap()).collect();
    ws[0] += &cfg.masses.a;
    ws[4] += &cfg.masses.b;
    let p = stieltjes(&xs, &ws, 2);
    let frozen: Rational = KRALL2_AT_1.parse().unwrap();
    assert_eq!(p[2][1], frozen);
    assert_eq!(kf.eval_krall(2, 1).unwrap(), frozen);
}

#[test]
fn first_krall_polynomial_is_orthogonal_to_constants() {
    let cfg = canonical();
    let fam = cfg.family();
    let kf = KrallFamily::new(&fam, cfg.masses.clone()).unwrap();
    let mu = DiscreteMeasure::from_family(&fam).unwrap().with_endpoint_masses(cfg.masses.a.clone(), cfg.masses.b.clone());
    let one = vec![Rational::one(); 5];
    let r1: Vec<Rational> = (0..=4).map(|s| kf.eval_krall(1, s).unwrap()).collect();
    assert!(mu.inner_product(&r1, &one).is_zero());
    // <1, 1> = 1 + A + B for the normalised measure.
    assert_eq!(mu.inner_product(&one, &one), Rational::one() + &cfg.masses.a + &cfg.masses.b);
}

#[test]
fn kernel_is_symmetric_and_matches_cd() {
    let fam = canonical().family();
    let k = kernel_sum(&fam, 2, 1, 3).unwrap();
    assert_eq!(k, kernel_sum(&fam, 2, 3, 1).unwrap());
    assert_eq!(k, qracah_krall::kernels::kernel_cd(&fam, 2, 1, 3).unwrap());
}
