//! Scalar and spinor spherical harmonics, the K-operator eigenbasis, and the
//! angular identities used by the mode reduction.
//!
//! Scalar harmonics `Y_{l,m}` follow the Condon-Shortley phase convention and
//! are fully orthonormalized on the unit sphere. The two-component spinor
//! harmonics `Omega_{kappa,mu}` are built from them with the usual
//! Clebsch-Gordan square-root coefficients; the regression test for the
//! convention is the pointwise action rule of the radial Dirac matrix
//! `alpha_r` on the stacked four-spinors.
//!
//! Only the diagonal pairing `mu' = mu` between the upper and lower blocks is
//! implemented: the mode reduction never couples distinct `mu` values.

use alloc::vec::Vec;
use core::fmt;

use crate::clifford::Spinor4;
use crate::quad::gauss_legendre;
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub enum HarmonicsError {
    /// `kappa = 0`, even `2 mu`, or `|mu| > |kappa| - 1/2`.
    InvalidMode { kappa: i32, two_mu: i32 },
    /// `|m| > l` requested for a scalar harmonic.
    InvalidHarmonicIndex { l: u32, m: i32 },
    /// A sampled field could not be represented in the requested basis.
    DecompositionResidual { residual: f64 },
}

impl fmt::Display for HarmonicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarmonicsError::InvalidMode { kappa, two_mu } => {
                write!(f, "invalid angular mode kappa={kappa}, 2mu={two_mu}")
            }
            HarmonicsError::InvalidHarmonicIndex { l, m } => {
                write!(f, "invalid harmonic index l={l}, m={m}")
            }
            HarmonicsError::DecompositionResidual { residual } => {
                write!(f, "field outside represented span (residual {residual:.3e})")
            }
        }
    }
}

/// Point on the unit sphere in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    /// Polar angle from the +z axis, in `[0, pi]`.
    pub theta: f64,
    /// Azimuth, in `[0, 2 pi)`.
    pub phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Self {
        SpherePoint { theta, phi }
    }

    /// Unit vector `(sin t cos p, sin t sin p, cos t)`.
    pub fn unit_vector(&self) -> [f64; 3] {
        let st = libm::sin(self.theta);
        [
            st * libm::cos(self.phi),
            st * libm::sin(self.phi),
            libm::cos(self.theta),
        ]
    }
}

/// Angular mode labels `(kappa, mu)` of a K-eigenspace.
///
/// `mu` is a half-integer stored exactly as `2 mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngularMode {
    kappa: i32,
    two_mu: i32,
}

impl AngularMode {
    pub fn new(kappa: i32, two_mu: i32) -> Result<Self, HarmonicsError> {
        if kappa == 0 || two_mu.rem_euclid(2) == 0 || two_mu.abs() > 2 * kappa.abs() - 1 {
            return Err(HarmonicsError::InvalidMode { kappa, two_mu });
        }
        Ok(AngularMode { kappa, two_mu })
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn two_mu(&self) -> i32 {
        self.two_mu
    }

    pub fn mu(&self) -> f64 {
        self.two_mu as f64 / 2.0
    }

    /// Orbital degree `l = |kappa + 1/2| - 1/2` of the harmonic carrying this
    /// `kappa`.
    pub fn l(&self) -> u32 {
        if self.kappa > 0 {
            self.kappa as u32
        } else {
            (-self.kappa - 1) as u32
        }
    }

    /// The partner mode `(-kappa, mu)` appearing in the lower block.
    pub fn conjugate(&self) -> AngularMode {
        AngularMode { kappa: -self.kappa, two_mu: self.two_mu }
    }

    /// All admissible `2 mu` values for a given `kappa`.
    pub fn admissible_two_mu(kappa: i32) -> impl Iterator<Item = i32> {
        let bound = 2 * kappa.abs() - 1;
        (-bound..=bound).step_by(2)
    }
}

/// Fully normalized associated Legendre value `Pbar_{l,m}(cos theta)` such
/// that `Y_{l,m} = Pbar_{l,m} e^{i m phi}`, Condon-Shortley phase included.
fn pbar(l: u32, m: u32, cos_t: f64, sin_t: f64) -> f64 {
    use core::f64::consts::PI;
    debug_assert!(m <= l);
    // Diagonal seed Pbar_{m,m}.
    let mut p_mm = libm::sqrt(1.0 / (4.0 * PI));
    for k in 1..=m {
        let kf = k as f64;
        p_mm *= -libm::sqrt((2.0 * kf + 1.0) / (2.0 * kf)) * sin_t;
    }
    if l == m {
        return p_mm;
    }
    let mf = m as f64;
    let mut p_prev = p_mm;
    let mut p_curr = libm::sqrt(2.0 * mf + 3.0) * cos_t * p_mm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = libm::sqrt((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf));
        let b = libm::sqrt(
            ((2.0 * lf + 1.0) * ((lf - 1.0) * (lf - 1.0) - mf * mf))
                / ((2.0 * lf - 3.0) * (lf * lf - mf * mf)),
        );
        let p_next = a * cos_t * p_curr - b * p_prev;
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Orthonormal scalar spherical harmonic `Y_{l,m}` at a point.
pub fn scalar_harmonic(l: u32, m: i32, point: SpherePoint) -> Result<C64, HarmonicsError> {
    if m.unsigned_abs() > l {
        return Err(HarmonicsError::InvalidHarmonicIndex { l, m });
    }
    let cos_t = libm::cos(point.theta);
    let sin_t = libm::sin(point.theta);
    let m_abs = m.unsigned_abs();
    let mut v = pbar(l, m_abs, cos_t, sin_t);
    if m < 0 && m_abs % 2 == 1 {
        // Y_{l,-m} = (-1)^m conj(Y_{l,m}); Pbar is real.
        v = -v;
    }
    let phase = C64::new(0.0, m as f64 * point.phi).exp();
    Ok(v * phase)
}

/// Spinor spherical harmonic `Omega_{kappa, mu}` as a two-component complex
/// vector. Coefficient zeros are honored exactly (the matching scalar
/// harmonic index may be out of range there).
pub fn omega(mode: &AngularMode, point: SpherePoint) -> Result<[C64; 2], HarmonicsError> {
    let kappa = mode.kappa;
    let two_mu = mode.two_mu;
    let l = mode.l();
    let denom = 2 * (2 * kappa + 1);
    // (kappa + 1/2 -+ mu) / (2 kappa + 1) as exact integer ratios.
    let num_up = 2 * kappa + 1 - two_mu;
    let num_lo = 2 * kappa + 1 + two_mu;
    let ratio_up = num_up as f64 / denom as f64;
    let ratio_lo = num_lo as f64 / denom as f64;
    debug_assert!(ratio_up >= 0.0 && ratio_lo >= 0.0);
    let sign_up = if kappa > 0 { -1.0 } else { 1.0 };

    let m_up = (two_mu - 1) / 2;
    let m_lo = (two_mu + 1) / 2;

    let up = if ratio_up == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        sign_up * libm::sqrt(ratio_up) * scalar_harmonic(l, m_up, point)?
    };
    let lo = if ratio_lo == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        libm::sqrt(ratio_lo) * scalar_harmonic(l, m_lo, point)?
    };
    Ok([up, lo])
}

/// Which sign the lower block carries in a stacked K-eigenvector.
///
/// `Plus` is `(Omega_{kappa,mu}; +Omega_{-kappa,mu})`, the `-1` eigenvector
/// of `alpha_r`; `Minus` is `(Omega_{kappa,mu}; -Omega_{-kappa,mu})`, the
/// `+1` eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn lower_sign(&self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    /// Pointwise eigenvalue of `alpha_r` on this stacked vector.
    pub fn alpha_r_eigenvalue(&self) -> f64 {
        match self {
            Parity::Plus => -1.0,
            Parity::Minus => 1.0,
        }
    }
}

/// A stacked four-spinor K-eigenvector `(Omega_{kappa,mu}; s Omega_{-kappa,mu})`.
#[derive(Debug, Clone, Copy)]
pub struct KEigenvector {
    pub mode: AngularMode,
    pub parity: Parity,
}

impl KEigenvector {
    pub fn new(mode: AngularMode, parity: Parity) -> Self {
        KEigenvector { mode, parity }
    }

    /// K eigenvalue `-kappa` of the stacked vector.
    pub fn k_eigenvalue(&self) -> f64 {
        -(self.mode.kappa as f64)
    }

    pub fn evaluate(&self, point: SpherePoint) -> Result<Spinor4, HarmonicsError> {
        let up = omega(&self.mode, point)?;
        let lo = omega(&self.mode.conjugate(), point)?;
        let s = self.parity.lower_sign();
        Ok(Spinor4([up[0], up[1], s * lo[0], s * lo[1]]))
    }
}

/// Product quadrature grid on the sphere: Gauss-Legendre in `cos theta`
/// crossed with a uniform azimuth rule. Exact for the polynomial integrands
/// appearing in harmonic orthonormality checks up to degree `l_max`.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    points: Vec<SpherePoint>,
    weights: Vec<f64>,
}

impl SphereGrid {
    pub fn new(l_max: usize) -> Self {
        use core::f64::consts::PI;
        let n_polar = l_max + 2;
        let n_azimuth = 2 * l_max + 2;
        let (us, ws) = gauss_legendre(n_polar);
        let mut points = Vec::with_capacity(n_polar * n_azimuth);
        let mut weights = Vec::with_capacity(n_polar * n_azimuth);
        let dphi = 2.0 * PI / n_azimuth as f64;
        for (&u, &w) in us.iter().zip(ws.iter()) {
            let theta = libm::acos(u);
            for k in 0..n_azimuth {
                points.push(SpherePoint::new(theta, dphi * k as f64));
                weights.push(w * dphi);
            }
        }
        SphereGrid { points, weights }
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Quadrature of a complex scalar over the sphere.
    pub fn integrate<F: FnMut(SpherePoint) -> C64>(&self, mut f: F) -> C64 {
        self.points
            .iter()
            .zip(self.weights.iter())
            .map(|(&p, &w)| w * f(p))
            .sum()
    }
}

/// A two-component spinor field sampled on a `SphereGrid`.
#[derive(Debug, Clone)]
pub struct SampledSpinorField {
    pub values: Vec<[C64; 2]>,
}

impl SampledSpinorField {
    pub fn sample<F>(grid: &SphereGrid, mut f: F) -> Result<Self, HarmonicsError>
    where
        F: FnMut(SpherePoint) -> Result<[C64; 2], HarmonicsError>,
    {
        let values = grid
            .points()
            .iter()
            .map(|&p| f(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SampledSpinorField { values })
    }

    pub fn zero(grid: &SphereGrid) -> Self {
        SampledSpinorField { values: alloc::vec![[C64::new(0.0, 0.0); 2]; grid.len()] }
    }

    pub fn norm(&self, grid: &SphereGrid) -> f64 {
        let s: f64 = self
            .values
            .iter()
            .zip(grid.weights().iter())
            .map(|(v, &w)| w * (v[0].norm_sqr() + v[1].norm_sqr()))
            .sum();
        libm::sqrt(s)
    }

    /// Hermitian pairing `<self, other>` under the grid quadrature.
    pub fn inner(&self, other: &SampledSpinorField, grid: &SphereGrid) -> C64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .zip(grid.weights().iter())
            .map(|((a, b), &w)| w * (a[0].conj() * b[0] + a[1].conj() * b[1]))
            .sum()
    }
}

/// Which 2x2 block of the four-spinor a sampled field represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockParity {
    /// Upper block: `beta = +1`, K acts as `-kappa` on `Omega_{kappa,mu}`.
    Upper,
    /// Lower block: `beta = -1`, K acts as `+kappa` on `Omega_{kappa,mu}`.
    Lower,
}

/// Applies the Dirac angular operator `K = beta (1 + Sigma . L)` spectrally.
///
/// The field is decomposed into spinor harmonics with `|kappa| <= kappa_max`
/// by quadrature; each coefficient is scaled by the block eigenvalue and the
/// field resynthesized. Fields outside the represented span are rejected via
/// the decomposition residual.
pub fn apply_k_operator(
    field: &SampledSpinorField,
    parity: BlockParity,
    grid: &SphereGrid,
    kappa_max: i32,
) -> Result<SampledSpinorField, HarmonicsError> {
    assert!(kappa_max >= 1);
    let field_norm = field.norm(grid);
    if field_norm == 0.0 {
        return Ok(SampledSpinorField::zero(grid));
    }

    let mut synth = SampledSpinorField::zero(grid);
    let mut applied = SampledSpinorField::zero(grid);
    for kappa in (-kappa_max..=kappa_max).filter(|&k| k != 0) {
        for two_mu in AngularMode::admissible_two_mu(kappa) {
            let mode = AngularMode::new(kappa, two_mu).expect("admissible mode");
            let basis = SampledSpinorField::sample(grid, |p| omega(&mode, p))?;
            let coeff = basis.inner(field, grid);
            let eigen = match parity {
                BlockParity::Upper => -(kappa as f64),
                BlockParity::Lower => kappa as f64,
            };
            for ((s, a), b) in synth
                .values
                .iter_mut()
                .zip(applied.values.iter_mut())
                .zip(basis.values.iter())
            {
                s[0] += coeff * b[0];
                s[1] += coeff * b[1];
                a[0] += eigen * coeff * b[0];
                a[1] += eigen * coeff * b[1];
            }
        }
    }

    let mut residual_sq = 0.0;
    for ((s, f), &w) in synth
        .values
        .iter()
        .zip(field.values.iter())
        .zip(grid.weights().iter())
    {
        residual_sq += w * ((s[0] - f[0]).norm_sqr() + (s[1] - f[1]).norm_sqr());
    }
    let residual = libm::sqrt(residual_sq) / field_norm;
    if residual > 1e-8 {
        return Err(HarmonicsError::DecompositionResidual { residual });
    }
    Ok(applied)
}

/// Checks the identity `I4 Laplacian_theta = K^2 - beta K` spectrally on both
/// blocks of a mode: the `(K^2 - beta K)` action computed through the
/// quadrature decomposition must reproduce `l (l + 1)` on each block.
/// Returns the maximum pointwise deviation.
pub fn verify_laplacian_identity(mode: &AngularMode) -> Result<f64, HarmonicsError> {
    let l_needed = mode.l().max(mode.conjugate().l()) as usize;
    let grid = SphereGrid::new(l_needed + 2);
    let kappa_max = mode.kappa.abs();

    let mut worst = 0.0f64;
    for (block, beta_sign, block_mode) in [
        (BlockParity::Upper, 1.0, *mode),
        (BlockParity::Lower, -1.0, mode.conjugate()),
    ] {
        let field = SampledSpinorField::sample(&grid, |p| omega(&block_mode, p))?;
        let kf = apply_k_operator(&field, block, &grid, kappa_max)?;
        let kkf = apply_k_operator(&kf, block, &grid, kappa_max)?;
        let l = block_mode.l() as f64;
        let target = l * (l + 1.0);
        for ((kk, k1), f) in kkf
            .values
            .iter()
            .zip(kf.values.iter())
            .zip(field.values.iter())
        {
            for c in 0..2 {
                let lhs = kk[c] - beta_sign * k1[c];
                let dev = (lhs - target * f[c]).norm();
                worst = worst.max(dev);
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_4PI: f64 = 0.28209479177387814;

    #[test]
    fn constant_mode_value() {
        let p = SpherePoint::new(1.234, 2.345);
        let y = scalar_harmonic(0, 0, p).unwrap();
        assert!((y.re - FRAC_1_SQRT_4PI).abs() < 1e-15);
        assert!(y.im.abs() < 1e-15);
    }

    #[test]
    fn dipole_at_north_pole() {
        let p = SpherePoint::new(0.0, 0.0);
        let y = scalar_harmonic(1, 0, p).unwrap();
        let want = libm::sqrt(3.0 / (4.0 * core::f64::consts::PI));
        assert!((y.re - want).abs() < 1e-15);
    }

    #[test]
    fn low_order_closed_forms() {
        // Explicit table up to l = 2 (Condon-Shortley convention).
        use core::f64::consts::PI;
        let pts = [
            SpherePoint::new(0.3, 0.7),
            SpherePoint::new(1.9, 4.0),
            SpherePoint::new(2.7, 5.9),
        ];
        for p in pts {
            let (st, ct) = (libm::sin(p.theta), libm::cos(p.theta));
            let e1 = C64::new(0.0, p.phi).exp();
            let e2 = C64::new(0.0, 2.0 * p.phi).exp();
            let cases: [(u32, i32, C64); 6] = [
                (1, 1, -libm::sqrt(3.0 / (8.0 * PI)) * st * e1),
                (1, -1, libm::sqrt(3.0 / (8.0 * PI)) * st * e1.conj()),
                (1, 0, C64::new(libm::sqrt(3.0 / (4.0 * PI)) * ct, 0.0)),
                (2, 0, C64::new(libm::sqrt(5.0 / (16.0 * PI)) * (3.0 * ct * ct - 1.0), 0.0)),
                (2, 1, -libm::sqrt(15.0 / (8.0 * PI)) * st * ct * e1),
                (2, 2, libm::sqrt(15.0 / (32.0 * PI)) * st * st * e2),
            ];
            for (l, m, want) in cases {
                let got = scalar_harmonic(l, m, p).unwrap();
                assert!(
                    (got - want).norm() < 1e-13,
                    "Y_{l},{m} at {p:?}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn quadrature_normalizes_y21() {
        let grid = SphereGrid::new(6);
        let v = grid.integrate(|p| {
            let y = scalar_harmonic(2, 1, p).unwrap();
            C64::new(y.norm_sqr(), 0.0)
        });
        assert!((v.re - 1.0).abs() < 1e-10);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn omega_orthonormality_within_kappa() {
        let grid = SphereGrid::new(6);
        let m1 = AngularMode::new(1, 1).unwrap();
        let m2 = AngularMode::new(1, -1).unwrap();
        let f1 = SampledSpinorField::sample(&grid, |p| omega(&m1, p)).unwrap();
        let f2 = SampledSpinorField::sample(&grid, |p| omega(&m2, p)).unwrap();
        assert!(f1.inner(&f2, &grid).norm() < 1e-10);
        assert!((f1.inner(&f1, &grid).re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn omega_for_kappa_minus_one_is_constant() {
        // kappa = -1 has l = 0: components are multiples of Y_{0,0}.
        let mode = AngularMode::new(-1, 1).unwrap();
        let a = omega(&mode, SpherePoint::new(0.4, 1.0)).unwrap();
        let b = omega(&mode, SpherePoint::new(2.0, 5.0)).unwrap();
        assert!((a[0] - b[0]).norm() < 1e-15);
        assert!((a[1] - b[1]).norm() < 1e-15);
        assert!((a[0].re - FRAC_1_SQRT_4PI).abs() < 1e-14);
        assert!(a[1].norm() < 1e-15);
        // and the mirror mode carries the harmonic in the lower slot
        let mirror = AngularMode::new(-1, -1).unwrap();
        let c = omega(&mirror, SpherePoint::new(0.9, 0.3)).unwrap();
        assert!(c[0].norm() < 1e-15);
        assert!((c[1].re - FRAC_1_SQRT_4PI).abs() < 1e-14);
    }

    #[test]
    fn k_operator_scales_basis_by_minus_kappa() {
        let grid = SphereGrid::new(6);
        for kappa in [1, -1, 2, -2] {
            let mode = AngularMode::new(kappa, 1).unwrap();
            let field = SampledSpinorField::sample(&grid, |p| omega(&mode, p)).unwrap();
            let kf = apply_k_operator(&field, BlockParity::Upper, &grid, 2).unwrap();
            for (got, want) in kf.values.iter().zip(field.values.iter()) {
                for c in 0..2 {
                    let expect = -(kappa as f64) * want[c];
                    assert!((got[c] - expect).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn k_operator_lower_block_sign() {
        // K on (0; Omega_{-1, 1/2}) equals -1 times the input: the lower
        // block action on Omega_{kappa} is +kappa, here kappa = -1.
        let grid = SphereGrid::new(6);
        let mode = AngularMode::new(-1, 1).unwrap();
        let field = SampledSpinorField::sample(&grid, |p| omega(&mode, p)).unwrap();
        let kf = apply_k_operator(&field, BlockParity::Lower, &grid, 2).unwrap();
        for (got, want) in kf.values.iter().zip(field.values.iter()) {
            for c in 0..2 {
                assert!((got[c] - (-1.0) * want[c]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn k_operator_zero_field() {
        let grid = SphereGrid::new(4);
        let zero = SampledSpinorField::zero(&grid);
        let kf = apply_k_operator(&zero, BlockParity::Upper, &grid, 2).unwrap();
        assert!(kf.norm(&grid) == 0.0);
    }

    #[test]
    fn k_operator_rejects_unrepresented_field() {
        // An l = 3 harmonic is outside the kappa_max = 2 span.
        let grid = SphereGrid::new(8);
        let field = SampledSpinorField::sample(&grid, |p| {
            Ok([scalar_harmonic(3, 0, p)?, C64::new(0.0, 0.0)])
        })
        .unwrap();
        match apply_k_operator(&field, BlockParity::Upper, &grid, 2) {
            Err(HarmonicsError::DecompositionResidual { residual }) => assert!(residual > 0.5),
            other => panic!("expected residual error, got {other:?}"),
        }
    }

    #[test]
    fn laplacian_identity_small_kappa() {
        for kappa in [1, -1, 2, -2] {
            let mode = AngularMode::new(kappa, 1).unwrap();
            let dev = verify_laplacian_identity(&mode).unwrap();
            assert!(dev < 1e-12, "kappa={kappa}: dev={dev:.3e}");
        }
    }

    #[test]
    fn laplacian_identity_example_values() {
        // Upper block of kappa = 1 carries l = 1 so K^2 - beta K = 2; upper
        // block of kappa = -1 carries l = 0 so the value is 0.
        let m1 = AngularMode::new(1, 1).unwrap();
        assert_eq!(m1.l(), 1);
        let km1 = AngularMode::new(-1, 1).unwrap();
        assert_eq!(km1.l(), 0);
        let k = 1.0f64; // eigenvalue of K is -kappa = -1, beta = +1
        assert_eq!((-k) * (-k) - (-k), 2.0);
        let k2 = -1.0f64; // kappa = -1: K eigenvalue +1 on the upper block
        assert_eq!((-k2) * (-k2) - (-k2), 0.0);
    }

    #[test]
    fn invalid_modes_rejected() {
        assert!(AngularMode::new(0, 1).is_err());
        assert!(AngularMode::new(1, 2).is_err());
        assert!(AngularMode::new(1, 3).is_err());
        assert!(scalar_harmonic(1, 2, SpherePoint::new(0.5, 0.5)).is_err());
    }
}
