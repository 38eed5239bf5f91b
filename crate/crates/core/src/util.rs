//! Small numeric utilities shared across the crate: a deterministic RNG for
//! sampled checks, polynomial extrapolation, and interpolation helpers.

use alloc::vec::Vec;

use crate::C64;

/// SplitMix64 pseudo-random generator.
///
/// Used wherever the crate needs reproducible random draws (parameter
/// sampling in scans and self-checks). Not cryptographic.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Evenly spaced sample points including both endpoints.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

/// Neville polynomial extrapolation of `(xs, ys)` to the point `x`.
///
/// The nodes must be pairwise distinct. Used for Richardson extrapolation in
/// `1/r` when reading off limits at infinity.
pub fn neville(xs: &[f64], ys: &[C64], x: f64) -> C64 {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let mut tbl: Vec<C64> = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let denom = xs[i] - xs[i + level];
            tbl[i] = ((x - xs[i + level]) * tbl[i] - (x - xs[i]) * tbl[i + 1]) / denom;
        }
    }
    tbl[0]
}

/// Cubic Lagrange interpolation on four consecutive uniformly spaced samples.
///
/// `t0` is the abscissa of `ys[0]` and `dt` the spacing; `t` should lie
/// between the middle two nodes for best accuracy.
pub fn cubic_interp(t0: f64, dt: f64, ys: &[C64; 4], t: f64) -> C64 {
    let u = (t - t0) / dt;
    let mut acc = C64::new(0.0, 0.0);
    for (k, &y) in ys.iter().enumerate() {
        let mut w = 1.0;
        for j in 0..4 {
            if j != k {
                w *= (u - j as f64) / (k as f64 - j as f64);
            }
        }
        acc += y * w;
    }
    acc
}

/// Ordinary least-squares line through `(xs, ys)`; returns `(slope, intercept)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "linear fit needs at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys.iter()) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: C64, b: C64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}
