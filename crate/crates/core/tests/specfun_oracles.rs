//! Independent cross-checks of the special-function layer.
//!
//! The gamma oracle below uses recurrence descent plus the Stirling series
//! with Bernoulli corrections; it shares no code with the Lanczos-based
//! implementation it checks.

use dirac_coulomb_core::specfun::{gamma_c, hyp2f1, hyp2f1_deriv, HypergeomParams};
use dirac_coulomb_core::util::SplitMix64;
use dirac_coulomb_core::C64;

/// Stirling-series log-gamma after shifting the argument to `|z| >= 40`.
fn oracle_gamma(z: C64) -> C64 {
    use std::f64::consts::PI;
    if z.re < 0.5 {
        let pi = C64::new(PI, 0.0);
        return pi / ((pi * z).sin() * oracle_gamma(C64::new(1.0, 0.0) - z));
    }
    // Bernoulli numbers B_2 .. B_14.
    const B: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let mut shift = C64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 40.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut ln_gamma = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    let w2 = w * w;
    let mut pw = w;
    for (n, &b) in B.iter().enumerate() {
        let k = 2.0 * (n as f64 + 1.0);
        ln_gamma += b / (k * (k - 1.0)) / pw;
        pw *= w2;
    }
    (ln_gamma - shift).exp()
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn gamma_matches_stirling_oracle_on_window() {
    // Deterministic sweep of the accuracy window |z| <= 50, |Im z| <= 50,
    // avoiding the pole neighborhoods on the negative real axis.
    let mut worst = 0.0f64;
    let mut worst_z = C64::new(0.0, 0.0);
    for i in 0..40 {
        for j in 0..40 {
            let re = -45.0 + 90.0 * (i as f64 + 0.5) / 40.0 + 0.37;
            let im = -49.0 + 98.0 * (j as f64 + 0.5) / 40.0 + 0.11;
            let z = C64::new(re, im);
            if z.norm() > 50.0 {
                continue;
            }
            let got = gamma_c(z).unwrap();
            let want = oracle_gamma(z);
            let r = rel(got, want);
            if r > worst {
                worst = r;
                worst_z = z;
            }
        }
    }
    assert!(worst < 1e-12, "worst rel err {worst:.3e} at z = {worst_z}");
}

#[test]
fn gamma_at_specific_complex_point() {
    let z = C64::new(2.0, 3.0);
    let got = gamma_c(z).unwrap();
    let want = oracle_gamma(z);
    assert!(rel(got, want) < 1e-13, "{got} vs {want}");
}

#[test]
fn gamma_reflection_identity_sampled() {
    let mut rng = SplitMix64::new(0x5eed_0001);
    for _ in 0..200 {
        let z = C64::new(rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0));
        if (z.re - libm::round(z.re)).abs() < 1e-3 {
            continue;
        }
        let lhs = gamma_c(z).unwrap() * gamma_c(C64::new(1.0, 0.0) - z).unwrap();
        let rhs = C64::new(std::f64::consts::PI, 0.0)
            / (C64::new(std::f64::consts::PI, 0.0) * z).sin();
        assert!(rel(lhs, rhs) < 1e-11, "z = {z}");
    }
}

#[test]
fn gauss_summation_at_unit_argument() {
    // 2F1(a, b; c; 1-) -> Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
    // approached through a short Richardson step in 1 - x.
    let a = C64::new(0.5, 0.0);
    let b = C64::new(0.25, 0.0);
    let c = C64::new(2.0, 0.0);
    let p = HypergeomParams::new(a, b, c).unwrap();

    let f1 = hyp2f1(&p, 1.0 - 2e-7).unwrap();
    let f2 = hyp2f1(&p, 1.0 - 1e-7).unwrap();
    // Eliminate the O(1-x) term: F ~ S + alpha (1-x) + o(1-x).
    let extrapolated = 2.0 * f2 - f1;

    let want = gamma_c(c).unwrap() * gamma_c(c - a - b).unwrap()
        / (gamma_c(c - a).unwrap() * gamma_c(c - b).unwrap());
    assert!(
        rel(extrapolated, want) < 1e-7,
        "{extrapolated} vs {want} (rel {:.2e})",
        rel(extrapolated, want)
    );
}

#[test]
fn series_and_euler_transform_agree_midband() {
    // On x in [0.4, 0.6] the direct route and the Euler-transformed route
    // must agree whenever c - a - b stays away from the integers.
    let mut rng = SplitMix64::new(0x5eed_0002);
    let mut tested = 0;
    while tested < 60 {
        let a = C64::new(rng.uniform(-1.5, 2.0), rng.uniform(-1.5, 1.5));
        let b = C64::new(rng.uniform(-1.5, 2.0), rng.uniform(-1.5, 1.5));
        let c = C64::new(rng.uniform(0.3, 3.0), rng.uniform(-1.0, 1.0));
        let s = c - a - b;
        let dist = (s - C64::new(libm::round(s.re), 0.0)).norm();
        if dist < 0.05 {
            continue;
        }
        let (p, q) = match (HypergeomParams::new(a, b, c), HypergeomParams::new(c - a, c - b, c)) {
            (Ok(p), Ok(q)) => (p, q),
            _ => continue,
        };
        let x = rng.uniform(0.4, 0.6);
        let direct = match hyp2f1(&p, x) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let pow = (C64::new((1.0 - x).ln(), 0.0) * s).exp();
        let via_euler = pow * hyp2f1(&q, x).unwrap();
        assert!(
            rel(direct, via_euler) < 1e-9,
            "a={a} b={b} c={c} x={x} rel={:.2e}",
            rel(direct, via_euler)
        );
        tested += 1;
    }
}

#[test]
fn derivative_matches_centered_difference() {
    let mut rng = SplitMix64::new(0x5eed_0003);
    let mut tested = 0;
    while tested < 40 {
        let a = C64::new(rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 1.0));
        let b = C64::new(rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 1.0));
        let c = C64::new(rng.uniform(0.5, 3.0), rng.uniform(-0.5, 0.5));
        let p = match HypergeomParams::new(a, b, c) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let x = rng.uniform(0.1, 0.45);
        let h = 1e-5;
        let (f_plus, f_minus) = match (hyp2f1(&p, x + h), hyp2f1(&p, x - h)) {
            (Ok(u), Ok(v)) => (u, v),
            _ => continue,
        };
        let fd = (f_plus - f_minus) / (2.0 * h);
        let d = hyp2f1_deriv(&p, x).unwrap();
        let scale = d.norm().max(1.0);
        assert!(
            (d - fd).norm() / scale < 1e-6,
            "a={a} b={b} c={c} x={x} d={d} fd={fd}"
        );
        tested += 1;
    }
}

#[test]
fn derivative_of_log_case_matches_closed_form() {
    // d/dx [-ln(1-x)/x] at x = 1/2, against the contiguous-relation route.
    let p = HypergeomParams::new(C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.0))
        .unwrap();
    let x: f64 = 0.5;
    let d = hyp2f1_deriv(&p, x).unwrap();
    let exact = 1.0 / (x * (1.0 - x)) + (1.0 - x).ln() / (x * x);
    assert!((d.re - exact).abs() < 1e-8, "{} vs {exact}", d.re);
    assert!(d.im.abs() < 1e-10);
}
