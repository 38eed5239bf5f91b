//! The Mellin-transformed boundary operator restricted to a single angular
//! mode.
//!
//! On the future cap, the operator family reduces on each `(kappa, mu)`
//! eigenspace to a pair of coupled first-order ODEs in the projective
//! coordinate `x` in `(0, 1)`, equivalent to inhomogeneous hypergeometric
//! equations. This module builds the kernel solutions, their closed-form
//! Wronskian, the variation-of-parameters inverse, the resonance pole
//! lattice `sigma = -Z - i (1 + nu + m)`, and the exponent index sets that
//! govern the late-time expansion.

use alloc::vec::Vec;
use core::fmt;

use crate::harmonics::AngularMode;
use crate::specfun::{HypergeomParams, SpecFunError};
use crate::C64;

mod kernels;
mod solve;

pub use kernels::HypergeomKernel;
pub use solve::{
    fit_pole_from_scan, peak_to_median, scan_resolvent_norm, solve_inhomogeneous,
    solver_residual, solver_residual_fd, ModeSolution, ModeSource, PoleFit, ScanPoint,
};

/// The Mellin dual variable.
pub type MellinFrequency = C64;

/// Coulomb charge together with the derived angular parameter
/// `nu(kappa) = sqrt(kappa^2 - Z^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeConfig {
    z: f64,
}

impl ChargeConfig {
    /// Requires `|Z| < 1/2`.
    pub fn new(z: f64) -> Result<Self, BoundaryError> {
        if !(z.abs() < 0.5) || !z.is_finite() {
            return Err(BoundaryError::InvalidCharge { z });
        }
        Ok(ChargeConfig { z })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `nu = sqrt(kappa^2 - Z^2)`; lies in `(|kappa| - 1/2, |kappa|]`.
    pub fn nu(&self, kappa: i32) -> f64 {
        let k = kappa as f64;
        libm::sqrt(k * k - self.z * self.z)
    }
}

/// Which cap of the boundary the reduction is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    CPlus,
    CMinus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryError {
    InvalidCharge { z: f64 },
    /// `sigma` is within the refusal distance of a resonance pole.
    AtResonance { sigma: C64, pole: C64 },
    /// The kernel pair degenerates at this `sigma` (Wronskian zero or a
    /// kernel parameter on the excluded integer set). At `Z = 0` these points
    /// are not poles of the inverse, but the kernel representation still
    /// breaks down there.
    KernelDegenerate { sigma: C64 },
    /// Source support must be compact inside the open interval `(0, 1)`.
    UnsupportedSource { lo: f64, hi: f64 },
    /// Quadrature failed to reach the requested tolerance.
    Quadrature { err_est: f64 },
    SpecFun(SpecFunError),
}

impl fmt::Display for BoundaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryError::InvalidCharge { z } => write!(f, "charge Z = {z} outside |Z| < 1/2"),
            BoundaryError::AtResonance { sigma, pole } => {
                write!(f, "sigma = {sigma} is within 1e-6 of the resonance pole {pole}")
            }
            BoundaryError::KernelDegenerate { sigma } => {
                write!(f, "hypergeometric kernels degenerate at sigma = {sigma}")
            }
            BoundaryError::UnsupportedSource { lo, hi } => {
                write!(f, "source support [{lo}, {hi}] not compact in (0, 1)")
            }
            BoundaryError::Quadrature { err_est } => {
                write!(f, "quadrature tolerance not reached (estimate {err_est:.3e})")
            }
            BoundaryError::SpecFun(e) => write!(f, "special-function failure: {e}"),
        }
    }
}

impl From<SpecFunError> for BoundaryError {
    fn from(e: SpecFunError) -> Self {
        BoundaryError::SpecFun(e)
    }
}

impl From<crate::specfun::GammaError> for BoundaryError {
    fn from(e: crate::specfun::GammaError) -> Self {
        BoundaryError::SpecFun(e.into())
    }
}

/// Hypergeometric parameters of the decoupled second-order equations on a
/// mode: the pair `(params_f, params_g)` for the two stacked components.
///
/// Near the future cap the regular component satisfies the equation with
/// `a = nu - i Z`, `b = nu + i sigma + i Z`, `c = 1 + 2 nu`, and its partner
/// the contiguous `(a + 1, b, c)`; near the past cap the roles swap and the
/// sign of `i Z` in `a` flips.
pub fn reduce_to_hypergeometric(
    cfg: &ChargeConfig,
    mode: &AngularMode,
    sigma: MellinFrequency,
    region: Region,
) -> (HypergeomParams, HypergeomParams) {
    let nu = cfg.nu(mode.kappa());
    let c = C64::new(1.0 + 2.0 * nu, 0.0);
    let b = C64::new(nu, 0.0) + C64::new(0.0, 1.0) * sigma + C64::new(0.0, cfg.z());
    let (pf, pg) = match region {
        Region::CPlus => {
            let a = C64::new(nu, -cfg.z());
            (
                HypergeomParams::new(a, b, c),
                HypergeomParams::new(a + 1.0, b, c),
            )
        }
        Region::CMinus => {
            let a = C64::new(nu, cfg.z());
            (
                HypergeomParams::new(a + 1.0, b, c),
                HypergeomParams::new(a, b, c),
            )
        }
    };
    // c = 1 + 2 nu > 1 is never a nonpositive integer.
    (pf.expect("c > 1"), pg.expect("c > 1"))
}

/// Resonance poles `sigma_m = -Z - i (1 + nu + m)` for `m = 0..=m_max`.
///
/// Empty at `Z = 0`: the gamma-factor poles of the inverse cancel there and
/// the solution leaves no tail (Huygens behavior).
pub fn resonance_poles(cfg: &ChargeConfig, mode: &AngularMode, m_max: usize) -> Vec<C64> {
    if cfg.z() == 0.0 {
        return Vec::new();
    }
    let nu = cfg.nu(mode.kappa());
    (0..=m_max)
        .map(|m| C64::new(-cfg.z(), -(1.0 + nu + m as f64)))
        .collect()
}

/// Which boundary face an index set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryFace {
    /// Null infinity.
    ScriPlus,
    /// The future cap.
    CPlus,
}

/// One exponent of a polyhomogeneous index set. `log_power` is the power of
/// the logarithm attached to the exponent (always zero here: the resonance
/// poles are simple).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexSetEntry {
    pub exponent: C64,
    pub log_power: u32,
    /// Generator indices: `(j, k)` for the future cap, `(0, k)` at null
    /// infinity.
    pub j: u32,
    pub k: u32,
}

/// Exponent lattice of the asymptotic expansion at one boundary face.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceIndexSet {
    pub face: BoundaryFace,
    pub entries: Vec<IndexSetEntry>,
}

impl ResonanceIndexSet {
    /// Decay exponents of `|R_+|(s)` implied by this set.
    ///
    /// The radiation field is the `rho^{-1-iZ}`-rescaled restriction of the
    /// solution, so the cap exponents shift down by 1 and the constant
    /// `i Z ln s` oscillation is reported separately as the phase slope.
    pub fn radiation_decay_exponents(&self) -> Vec<f64> {
        match self.face {
            BoundaryFace::CPlus => self.entries.iter().map(|e| e.exponent.re - 1.0).collect(),
            BoundaryFace::ScriPlus => self.entries.iter().map(|e| e.exponent.re).collect(),
        }
    }

    /// Index-set closure under unit shifts of the exponent, checked up to the
    /// generated depth: whenever the shifted generator index is still inside
    /// the truncation, the shifted exponent must be present.
    pub fn is_shift_closed(&self) -> bool {
        let (max_j, max_k) = self.entries.iter().fold((0u32, 0u32), |(mj, mk), e| {
            (mj.max(e.j), mk.max(e.k))
        });
        self.entries.iter().all(|e| {
            let inside = match self.face {
                BoundaryFace::CPlus => e.j < max_j,
                BoundaryFace::ScriPlus => e.k < max_k,
            };
            if !inside {
                return true;
            }
            let shifted = e.exponent + 1.0;
            self.entries
                .iter()
                .any(|o| (o.exponent - shifted).norm() < 1e-12 && o.log_power == e.log_power)
        })
    }
}

/// Generates the exponent lattices at null infinity and at the future cap.
///
/// Null infinity carries `{1 + i Z + k : k = 0 .. depth_k - 1}`; the future
/// cap carries `{1 + j + sqrt(k^2 - Z^2) : j, k = 1 ..}` truncated at the
/// stated depths. Entries are sorted by real part.
pub fn index_set(
    cfg: &ChargeConfig,
    depth_j: usize,
    depth_k: usize,
) -> (ResonanceIndexSet, ResonanceIndexSet) {
    assert!(depth_j >= 1 && depth_k >= 1, "depths must be at least 1");
    let scri_entries: Vec<IndexSetEntry> = (0..depth_k)
        .map(|k| IndexSetEntry {
            exponent: C64::new(1.0 + k as f64, cfg.z()),
            log_power: 0,
            j: 0,
            k: k as u32,
        })
        .collect();

    let mut cap_entries: Vec<IndexSetEntry> = Vec::with_capacity(depth_j * depth_k);
    for j in 1..=depth_j {
        for k in 1..=depth_k {
            cap_entries.push(IndexSetEntry {
                exponent: C64::new(1.0 + j as f64 + cfg.nu(k as i32), 0.0),
                log_power: 0,
                j: j as u32,
                k: k as u32,
            });
        }
    }
    cap_entries.sort_by(|a, b| a.exponent.re.partial_cmp(&b.exponent.re).unwrap());

    (
        ResonanceIndexSet { face: BoundaryFace::ScriPlus, entries: scri_entries },
        ResonanceIndexSet { face: BoundaryFace::CPlus, entries: cap_entries },
    )
}

/// Closed-form Wronskian `w1 w4' - w1' w4` of the kernel pair at `x`.
///
/// Errors at the resonance set, where the closed form degenerates (the
/// gamma factor in the variation-of-parameters prefactor has a pole there
/// and the kernel pair becomes linearly dependent).
pub fn wronskian_closed_form(kernel: &HypergeomKernel, x: f64) -> Result<C64, BoundaryError> {
    kernel.wronskian_closed_form(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mode(kappa: i32) -> AngularMode {
        AngularMode::new(kappa, 1).unwrap()
    }

    #[test]
    fn charge_validation() {
        assert!(ChargeConfig::new(0.49).is_ok());
        assert!(ChargeConfig::new(-0.3).is_ok());
        assert!(matches!(
            ChargeConfig::new(0.5),
            Err(BoundaryError::InvalidCharge { .. })
        ));
        assert!(ChargeConfig::new(0.7).is_err());
    }

    #[test]
    fn nu_range_and_zero_charge() {
        let cfg = ChargeConfig::new(0.3).unwrap();
        for kappa in [1, -1, 2, -2, 5] {
            let nu = cfg.nu(kappa);
            let k = kappa.abs() as f64;
            assert!(nu > k - 0.5 && nu <= k);
        }
        let free = ChargeConfig::new(0.0).unwrap();
        assert_eq!(free.nu(3), 3.0);
    }

    #[test]
    fn reduction_matches_printed_parameters() {
        let cfg = ChargeConfig::new(0.3).unwrap();
        let sigma = C64::new(0.0, 1.0);
        let (pf, pg) = reduce_to_hypergeometric(&cfg, &mode(1), sigma, Region::CPlus);
        let nu = libm::sqrt(0.91);
        assert!((pf.a - C64::new(nu, -0.3)).norm() < 1e-12);
        assert!((pf.c - C64::new(1.0 + 2.0 * nu, 0.0)).norm() < 1e-12);
        assert!((pf.b - C64::new(nu - 1.0, 0.3)).norm() < 1e-12);
        assert!((pg.a - (pf.a + 1.0)).norm() < 1e-14);
        assert!((pg.b - pf.b).norm() == 0.0);

        // Zero charge: a = nu = |kappa| real.
        let free = ChargeConfig::new(0.0).unwrap();
        let (pf0, _) = reduce_to_hypergeometric(&free, &mode(1), sigma, Region::CPlus);
        assert_eq!(pf0.a, C64::new(1.0, 0.0));

        // Past cap swaps the sign of iZ in a (and the contiguous shift).
        let (pfm, pgm) = reduce_to_hypergeometric(&cfg, &mode(1), sigma, Region::CMinus);
        assert!((pgm.a - C64::new(nu, 0.3)).norm() < 1e-12);
        assert!((pfm.a - (pgm.a + 1.0)).norm() < 1e-14);
    }

    #[test]
    fn pole_lattice_values() {
        let cfg = ChargeConfig::new(0.3).unwrap();
        let poles = resonance_poles(&cfg, &mode(1), 2);
        assert_eq!(poles.len(), 3);
        let nu = libm::sqrt(0.91f64);
        assert!((poles[0] - C64::new(-0.3, -(1.0 + nu))).norm() < 1e-12);
        assert!((poles[0] - C64::new(-0.3, -1.9539392014169456)).norm() < 1e-10);

        let poles2 = resonance_poles(&cfg, &mode(2), 1);
        let nu2 = libm::sqrt(4.0f64 - 0.09);
        assert!((poles2[1] - C64::new(-0.3, -(2.0 + nu2))).norm() < 1e-12);

        let free = ChargeConfig::new(0.0).unwrap();
        assert!(resonance_poles(&free, &mode(1), 5).is_empty());
    }

    #[test]
    fn index_set_leading_exponents() {
        let cfg = ChargeConfig::new(0.3).unwrap();
        let (scri, cap) = index_set(&cfg, 3, 3);
        // Leading cap exponent 1 + 1 + sqrt(1 - 0.09).
        let lead = cap.entries.first().unwrap();
        assert!((lead.exponent.re - 2.9539392014169456).abs() < 1e-12);
        assert_eq!((lead.j, lead.k), (1, 1));
        // Scri real parts are 1, 2, 3 with constant imaginary part Z.
        for (k, e) in scri.entries.iter().enumerate() {
            assert!((e.exponent.re - (1.0 + k as f64)).abs() < 1e-14);
            assert!((e.exponent.im - 0.3).abs() < 1e-14);
        }
        // Radiation-field convention: cap exponents shift down by one.
        let rad = cap.radiation_decay_exponents();
        assert!((rad[0] - 1.9539392014169456).abs() < 1e-12);
    }

    #[test]
    fn index_set_integer_lattice_at_zero_charge() {
        let free = ChargeConfig::new(0.0).unwrap();
        let (_, cap) = index_set(&free, 2, 2);
        let mut re: Vec<f64> = cap.entries.iter().map(|e| e.exponent.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(re, alloc::vec![3.0, 4.0, 4.0, 5.0]);
    }

    #[test]
    fn index_sets_are_shift_closed() {
        let cfg = ChargeConfig::new(0.25).unwrap();
        let (scri, cap) = index_set(&cfg, 4, 4);
        assert!(scri.is_shift_closed());
        assert!(cap.is_shift_closed());
    }
}
