//! Quadrature rules: Gauss-Legendre nodes for exact polynomial integration on
//! the sphere, and an adaptive Gauss-Kronrod 7-15 rule for the
//! variation-of-parameters integrals.

use alloc::vec;
use alloc::vec::Vec;

use crate::C64;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
///
/// Exact for polynomials of degree `2n - 1`. Nodes are computed by Newton
/// iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess.
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if libm::fabs(dx) < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x.abs();
        nodes[n - 1 - i] = x.abs();
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_deriv(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

// Gauss-Kronrod 7-15 nodes and weights (positive half; the rule is symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 7-15 panel on `[a, b]`; returns the K15 value and an
/// error estimate from the embedded G7 rule.
pub fn kronrod15<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64) -> (C64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut kres = C64::new(0.0, 0.0);
    let mut gres = C64::new(0.0, 0.0);
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        if x == 0.0 {
            let v = f(mid);
            kres += wk * v;
            gres += WG[3] * v;
        } else {
            let v1 = f(mid - half * x);
            let v2 = f(mid + half * x);
            kres += wk * (v1 + v2);
            // Odd Kronrod-only nodes are skipped by the Gauss rule.
            if j % 2 == 1 {
                gres += WG[j / 2] * (v1 + v2);
            }
        }
    }
    kres *= half;
    gres *= half;
    (kres, (kres - gres).norm())
}

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand.
///
/// Bisects panels until the summed error estimate is below
/// `tol_abs + tol_rel * |integral|` or the panel budget is exhausted.
/// Returns the integral and the accumulated error estimate.
pub struct AdaptiveResult {
    pub value: C64,
    pub err_est: f64,
    pub panels: usize,
}

pub fn integrate_adaptive<F: FnMut(f64) -> C64>(
    mut f: F,
    a: f64,
    b: f64,
    tol_abs: f64,
    tol_rel: f64,
    max_panels: usize,
) -> AdaptiveResult {
    if a == b {
        return AdaptiveResult { value: C64::new(0.0, 0.0), err_est: 0.0, panels: 0 };
    }
    // Work stack of (lo, hi, value, err) panels, refined worst-first.
    let (v0, e0) = kronrod15(&mut f, a, b);
    let mut panels: Vec<(f64, f64, C64, f64)> = vec![(a, b, v0, e0)];
    let mut used = 1usize;
    loop {
        let total: C64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= tol_abs + tol_rel * total.norm() || used >= max_panels {
            return AdaptiveResult { value: total, err_est: err, panels: used };
        }
        // Split the panel with the largest error estimate.
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .3.partial_cmp(&b.1 .3).unwrap())
            .unwrap();
        let (lo, hi, _, _) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (vl, el) = kronrod15(&mut f, lo, mid);
        let (vr, er) = kronrod15(&mut f, mid, hi);
        panels.push((lo, mid, vl, el));
        panels.push((mid, hi, vr, er));
        used += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exactness() {
        // n nodes integrate x^k exactly for k <= 2n - 1.
        for n in [2usize, 5, 8, 13] {
            let (xs, ws) = gauss_legendre(n);
            for k in 0..=(2 * n - 1) {
                let got: f64 = xs
                    .iter()
                    .zip(ws.iter())
                    .map(|(&x, &w)| w * x.powi(k as i32))
                    .sum();
                let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
                assert!(
                    (got - exact).abs() < 1e-13,
                    "n={n} k={k} got={got} exact={exact}"
                );
            }
        }
    }

    #[test]
    fn kronrod_constants_transcribed_correctly() {
        // K15 integrates polynomials up to degree 22 exactly; checking a few
        // high degrees pins down the node/weight transcription.
        for k in [10usize, 15, 20, 22] {
            let mut f = |x: f64| C64::new(x.powi(k as i32), 0.0);
            let (v, _) = kronrod15(&mut f, -1.0, 1.0);
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((v.re - exact).abs() < 2e-14, "k={k}: {} vs {exact}", v.re);
            assert!(v.im.abs() < 1e-15);
        }
        let mut g = |x: f64| C64::new(libm::sin(x), 0.0);
        let (v, _) = kronrod15(&mut g, 0.0, core::f64::consts::PI);
        assert!((v.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // Narrow Lorentzian: integral of 1/((x-0.3)^2 + 1e-4) over [0,1].
        let eps: f64 = 1e-2;
        let f = |x: f64| C64::new(1.0 / ((x - 0.3) * (x - 0.3) + eps * eps), 0.0);
        let res = integrate_adaptive(f, 0.0, 1.0, 1e-12, 1e-12, 2000);
        let exact = (libm::atan(0.7 / eps) + libm::atan(0.3 / eps)) / eps;
        assert!((res.value.re - exact).abs() / exact < 1e-10);
    }

    #[test]
    fn adaptive_complex_oscillatory() {
        // int_0^1 exp(i w x) dx = (exp(iw) - 1) / (iw)
        let w = 37.0;
        let f = |x: f64| C64::new(0.0, w * x).exp();
        let res = integrate_adaptive(f, 0.0, 1.0, 1e-13, 1e-13, 2000);
        let iw = C64::new(0.0, w);
        let exact = (iw.exp() - C64::new(1.0, 0.0)) / iw;
        assert!((res.value - exact).norm() < 1e-12);
    }
}
