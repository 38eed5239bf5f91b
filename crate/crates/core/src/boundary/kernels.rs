//! Kernel solutions of the mode-reduced hypergeometric equations.
//!
//! For parameters `(a, b, c)` the pair is `w1 = F(a, b; c; x)`, regular at
//! `x = 0` (square-integrable branch), and
//! `w4 = (1-x)^{c-a-b} F(c-a, c-b; c-a-b+1; 1-x)`, carrying the outgoing
//! branch at `x = 1`. Their Wronskian has the closed form
//! `-Gamma(c) Gamma(c-a-b+1) / (Gamma(c-a) Gamma(c-b)) x^{-c} (1-x)^{c-a-b-1}`.
//! Kernel names follow the DLMF 15.10(ii) numbering.

use crate::specfun::{gamma_c, hyp2f1, hyp2f1_deriv, HypergeomParams};
use crate::C64;

use super::{reduce_to_hypergeometric, BoundaryError, ChargeConfig, MellinFrequency, Region};
use crate::harmonics::AngularMode;

/// One fundamental pair for a fixed parameter triple.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KernelPair {
    pub params: HypergeomParams,
    /// `s = c - a - b`, the exponent of the `x = 1` branch.
    pub s: C64,
}

impl KernelPair {
    pub fn new(params: HypergeomParams) -> Self {
        let s = params.c - params.a - params.b;
        KernelPair { params, s }
    }

    fn params_at_one(&self) -> Result<HypergeomParams, BoundaryError> {
        let p = &self.params;
        HypergeomParams::new(p.c - p.a, p.c - p.b, self.s + 1.0).map_err(BoundaryError::from)
    }

    pub fn w1(&self, x: f64) -> Result<C64, BoundaryError> {
        hyp2f1(&self.params, x).map_err(BoundaryError::from)
    }

    pub fn w1_deriv(&self, x: f64) -> Result<C64, BoundaryError> {
        hyp2f1_deriv(&self.params, x).map_err(BoundaryError::from)
    }

    pub fn w4(&self, x: f64) -> Result<C64, BoundaryError> {
        let p1 = self.params_at_one()?;
        let y = 1.0 - x;
        let pow = (C64::new(libm::log(y), 0.0) * self.s).exp();
        Ok(pow * hyp2f1(&p1, y)?)
    }

    pub fn w4_deriv(&self, x: f64) -> Result<C64, BoundaryError> {
        let p1 = self.params_at_one()?;
        let y = 1.0 - x;
        let f = hyp2f1(&p1, y)?;
        let fd = hyp2f1_deriv(&p1, y)?;
        // d/dx [(1-x)^s F(1-x)] = -(1-x)^{s-1} [s F + (1-x) F'].
        let pow_sm1 = (C64::new(libm::log(y), 0.0) * (self.s - 1.0)).exp();
        Ok(-pow_sm1 * (self.s * f + y * fd))
    }

    /// Constant part of the Wronskian `w1 w4' - w1' w4`.
    pub fn wronskian_constant(&self) -> Result<C64, BoundaryError> {
        let p = &self.params;
        let num = gamma_c(p.c).map_err(BoundaryError::from)?
            * gamma_c(self.s + 1.0).map_err(BoundaryError::from)?;
        let den = gamma_c(p.c - p.a).map_err(BoundaryError::from)?
            * gamma_c(p.c - p.b).map_err(BoundaryError::from)?;
        Ok(-num / den)
    }

    pub fn wronskian_at(&self, x: f64) -> Result<C64, BoundaryError> {
        let k = self.wronskian_constant()?;
        let xpow = (C64::new(libm::log(x), 0.0) * (-self.params.c)).exp();
        let ypow = (C64::new(libm::log(1.0 - x), 0.0) * (self.s - 1.0)).exp();
        Ok(k * xpow * ypow)
    }

    /// `1 / W_const`, the prefactor of the variation-of-parameters formula:
    /// `-Gamma(c-a) Gamma(c-b) / (Gamma(c) Gamma(c-a-b+1))`. Its poles in
    /// `sigma` are exactly the resonance set.
    pub fn vop_prefactor(&self) -> Result<C64, BoundaryError> {
        let p = &self.params;
        let num = gamma_c(p.c - p.a).map_err(BoundaryError::from)?
            * gamma_c(p.c - p.b).map_err(BoundaryError::from)?;
        let den = gamma_c(p.c).map_err(BoundaryError::from)?
            * gamma_c(self.s + 1.0).map_err(BoundaryError::from)?;
        Ok(-num / den)
    }
}

/// Kernel bundle for one `(Z, kappa, sigma)` triple on a chosen cap: the
/// plain pair `w1, w4` for the first stacked component and the tilde pair
/// for its partner.
#[derive(Debug, Clone, Copy)]
pub struct HypergeomKernel {
    pub region: Region,
    pub params: HypergeomParams,
    pub(crate) pair_f: KernelPair,
    pub(crate) pair_g: KernelPair,
}

impl HypergeomKernel {
    pub fn new(
        cfg: &ChargeConfig,
        mode: &AngularMode,
        sigma: MellinFrequency,
        region: Region,
    ) -> Self {
        let (pf, pg) = reduce_to_hypergeometric(cfg, mode, sigma, region);
        HypergeomKernel {
            region,
            params: pf,
            pair_f: KernelPair::new(pf),
            pair_g: KernelPair::new(pg),
        }
    }

    pub fn w1(&self, x: f64) -> Result<C64, BoundaryError> {
        self.pair_f.w1(x)
    }

    pub fn w1_deriv(&self, x: f64) -> Result<C64, BoundaryError> {
        self.pair_f.w1_deriv(x)
    }

    pub fn w4(&self, x: f64) -> Result<C64, BoundaryError> {
        self.pair_f.w4(x)
    }

    pub fn w4_deriv(&self, x: f64) -> Result<C64, BoundaryError> {
        self.pair_f.w4_deriv(x)
    }

    pub fn w1_tilde(&self, x: f64) -> Result<C64, BoundaryError> {
        self.pair_g.w1(x)
    }

    pub fn w4_tilde(&self, x: f64) -> Result<C64, BoundaryError> {
        self.pair_g.w4(x)
    }

    /// Closed-form Wronskian of the `w1, w4` pair at `x`.
    pub fn wronskian_closed_form(&self, x: f64) -> Result<C64, BoundaryError> {
        self.pair_f.wronskian_at(x)
    }
}
