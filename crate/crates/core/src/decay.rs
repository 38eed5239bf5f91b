//! Late-time decay analysis of the extracted radiation field: power-law
//! fitting of modulus and phase, tail-free (Huygens) checks at zero charge,
//! and comparison against the resonance exponent lattice.

use alloc::vec::Vec;
use core::fmt;

use crate::boundary::ResonanceIndexSet;
use crate::util::linear_fit;
use crate::C64;

/// One radiation-field sample at lapse `s` (a fixed mode and component).
#[derive(Debug, Clone, Copy)]
pub struct DecaySample {
    pub s: f64,
    pub value: C64,
}

/// Result of the single-term model fit `R(s) ~ amplitude * s^{-exponent}
/// * s^{i phase_slope}`.
#[derive(Debug, Clone, Copy)]
pub struct FitResult {
    /// Modulus decay exponent (positive for decaying signals).
    pub exponent: f64,
    /// Slope of the unwrapped phase against `ln s`; the prediction for a
    /// charge-`Z` tail is `Z`.
    pub phase_slope: f64,
    pub amplitude: C64,
    pub window: (f64, f64),
    /// Maximum relative deviation of the fitted model over the window.
    pub residual: f64,
    pub n_samples: usize,
}

impl FitResult {
    /// The same decay expressed as an exponent of the unrescaled spacetime
    /// field near the cap: shifted up by one by the `rho^{1+iZ}` convention
    /// of the radiation field.
    pub fn spacetime_exponent(&self) -> f64 {
        self.exponent + 1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FitError {
    TooFewSamples { found: usize, needed: usize },
    /// A zero (or sign-degenerate) sample makes the log-fit ill-posed.
    ZeroSample { s: f64 },
    NotIncreasing,
    /// Phase continuation exceeded the branch guard between samples.
    PhaseJump { s: f64, jump: f64 },
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::TooFewSamples { found, needed } => {
                write!(f, "only {found} samples in window, need {needed}")
            }
            FitError::ZeroSample { s } => write!(f, "zero sample at s = {s} inside fit window"),
            FitError::NotIncreasing => write!(f, "sample lapse values must increase strictly"),
            FitError::PhaseJump { s, jump } => {
                write!(f, "phase jump {jump:.3} rad at s = {s} exceeds the pi/2 guard")
            }
        }
    }
}

const MIN_SAMPLES: usize = 20;
/// Branch guard for phase continuation.
const PHASE_GUARD: f64 = core::f64::consts::FRAC_PI_2;

/// Least-squares fit of `ln |R|` and unwrapped `arg R` against `ln s` over
/// the window.
pub fn fit_power_law(samples: &[DecaySample], window: (f64, f64)) -> Result<FitResult, FitError> {
    if samples.windows(2).any(|w| w[1].s <= w[0].s) {
        return Err(FitError::NotIncreasing);
    }
    let sel: Vec<&DecaySample> = samples
        .iter()
        .filter(|p| p.s >= window.0 && p.s <= window.1)
        .collect();
    if sel.len() < MIN_SAMPLES {
        return Err(FitError::TooFewSamples { found: sel.len(), needed: MIN_SAMPLES });
    }
    for p in &sel {
        if p.value.norm() == 0.0 || !p.value.norm().is_finite() {
            return Err(FitError::ZeroSample { s: p.s });
        }
    }

    let ln_s: Vec<f64> = sel.iter().map(|p| libm::log(p.s)).collect();
    let ln_mod: Vec<f64> = sel.iter().map(|p| libm::log(p.value.norm())).collect();

    // Nearest-branch phase continuation with the pi/2 step guard.
    let mut phases = Vec::with_capacity(sel.len());
    let mut prev = sel[0].value.arg();
    phases.push(prev);
    for p in sel.iter().skip(1) {
        let raw = p.value.arg();
        let mut adjusted = raw;
        let two_pi = 2.0 * core::f64::consts::PI;
        while adjusted - prev > core::f64::consts::PI {
            adjusted -= two_pi;
        }
        while prev - adjusted > core::f64::consts::PI {
            adjusted += two_pi;
        }
        let jump = adjusted - prev;
        if libm::fabs(jump) > PHASE_GUARD {
            return Err(FitError::PhaseJump { s: p.s, jump });
        }
        phases.push(adjusted);
        prev = adjusted;
    }

    let (slope_mod, icept_mod) = linear_fit(&ln_s, &ln_mod);
    let (slope_arg, icept_arg) = linear_fit(&ln_s, &phases);

    let exponent = -slope_mod;
    let amplitude = libm::exp(icept_mod) * C64::new(0.0, icept_arg).exp();

    let mut residual = 0.0f64;
    for (p, &ls) in sel.iter().zip(ln_s.iter()) {
        let model_mod = libm::exp(icept_mod + slope_mod * ls);
        let model_arg = icept_arg + slope_arg * ls;
        let model = model_mod * C64::new(0.0, model_arg).exp();
        residual = residual.max((model - p.value).norm() / p.value.norm());
    }

    Ok(FitResult {
        exponent,
        phase_slope: slope_arg,
        amplitude,
        window,
        residual,
        n_samples: sel.len(),
    })
}

/// Outcome of a tail-absence check.
#[derive(Debug, Clone, Copy)]
pub struct HuygensReport {
    pub pass: bool,
    pub peak: f64,
    /// Largest modulus beyond `support_bound + margin`.
    pub tail_max: f64,
    pub tail_start: f64,
    /// Allowed `tail_max / peak` ratio.
    pub max_ratio: f64,
}

/// Checks that the signal leaves no tail: beyond `support_bound + margin`
/// every sample must stay below `max_ratio` times the overall peak. An empty
/// or all-zero sample set passes vacuously.
pub fn huygens_test(
    samples: &[DecaySample],
    support_bound: f64,
    margin: f64,
    max_ratio: f64,
) -> HuygensReport {
    let tail_start = support_bound + margin;
    let peak = samples.iter().map(|p| p.value.norm()).fold(0.0, f64::max);
    let tail_max = samples
        .iter()
        .filter(|p| p.s > tail_start)
        .map(|p| p.value.norm())
        .fold(0.0, f64::max);
    let pass = peak == 0.0 || tail_max <= max_ratio * peak;
    HuygensReport { pass, peak, tail_max, tail_start, max_ratio }
}

/// Result of matching a fitted exponent against an index set.
#[derive(Debug, Clone, Copy)]
pub struct IndexMatchReport {
    pub matched: bool,
    /// Nearest exponent of the set, in the radiation-field convention.
    pub nearest: f64,
    pub gap: f64,
    /// The fitted exponent in both conventions.
    pub radiation_exponent: f64,
    pub spacetime_exponent: f64,
}

/// Compares the fitted modulus exponent against the exponent lattice,
/// using the set's radiation-field convention (cap entries shift down by
/// one). Reports the nearest lattice point and whether the gap is within
/// tolerance.
pub fn compare_index_set(
    fit: &FitResult,
    iset: &ResonanceIndexSet,
    tolerance: f64,
) -> IndexMatchReport {
    let exps = iset.radiation_decay_exponents();
    let mut nearest = f64::NAN;
    let mut gap = f64::INFINITY;
    for e in exps {
        let d = libm::fabs(e - fit.exponent);
        if d < gap {
            gap = d;
            nearest = e;
        }
    }
    IndexMatchReport {
        matched: gap <= tolerance,
        nearest,
        gap,
        radiation_exponent: fit.exponent,
        spacetime_exponent: fit.spacetime_exponent(),
    }
}
