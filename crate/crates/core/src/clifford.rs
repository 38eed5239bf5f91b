//! Dirac matrix algebra in the standard representation.
//!
//! Provides the 4x4 gamma matrices, the physics-convention `beta` / `alpha_j`
//! matrices, the Pauli matrices, and the direction-dependent radial versions
//! `sigma_r`, `alpha_r`, `gamma_r`. All entries are exact machine numbers
//! (0, +-1, +-i), so the algebraic identities hold to rounding.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Dense 4x4 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4 {
    pub entries: [[C64; 4]; 4],
}

/// Four-component complex spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4(pub [C64; 4]);

/// The mostly-plus Minkowski metric components `eta^{alpha beta}`.
#[derive(Debug, Clone, Copy)]
pub struct MinkowskiMetric;

impl MinkowskiMetric {
    pub fn component(&self, alpha: usize, beta: usize) -> f64 {
        assert!(alpha < 4 && beta < 4);
        if alpha != beta {
            0.0
        } else if alpha == 0 {
            -1.0
        } else {
            1.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliffordError {
    /// Matrix index outside `0..=3`.
    InvalidIndex(usize),
    /// The supplied direction is not a unit vector.
    NonUnitDirection { norm: f64 },
}

impl fmt::Display for CliffordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordError::InvalidIndex(i) => write!(f, "matrix index {i} outside 0..=3"),
            CliffordError::NonUnitDirection { norm } => {
                write!(f, "direction has norm {norm}, expected 1 within 1e-12")
            }
        }
    }
}

impl Matrix4 {
    pub const fn zero() -> Self {
        Matrix4 { entries: [[ZERO; 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut m = Matrix4::zero();
        for k in 0..4 {
            m.entries[k][k] = ONE;
        }
        m
    }

    /// Builds a 4x4 matrix from four 2x2 blocks `[[a, b], [c, d]]`.
    pub fn from_blocks(a: [[C64; 2]; 2], b: [[C64; 2]; 2], c: [[C64; 2]; 2], d: [[C64; 2]; 2]) -> Self {
        let mut m = Matrix4::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.entries[i][j] = a[i][j];
                m.entries[i][j + 2] = b[i][j];
                m.entries[i + 2][j] = c[i][j];
                m.entries[i + 2][j + 2] = d[i][j];
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for row in m.entries.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|k| self.entries[k][k]).sum()
    }

    /// Largest entry magnitude of `self`.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.entries {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn apply(&self, v: &Spinor4) -> Spinor4 {
        let mut out = [ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.entries[i][j] * v.0[j];
            }
        }
        Spinor4(out)
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, rhs: Matrix4) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[i][j] + rhs.entries[i][j];
            }
        }
        m
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(self, rhs: Matrix4) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[i][j] - rhs.entries[i][j];
            }
        }
        m
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += self.entries[i][k] * rhs.entries[k][j];
                }
                m.entries[i][j] = acc;
            }
        }
        m
    }
}

impl Neg for Matrix4 {
    type Output = Matrix4;
    fn neg(self) -> Matrix4 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Spinor4 {
    pub fn zero() -> Self {
        Spinor4([ZERO; 4])
    }

    /// Squared norm `sum |component|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Pointwise hermitian inner product `<self, other>` (conjugate-linear in
    /// the first slot).
    pub fn inner(&self, other: &Spinor4) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: C64) -> Spinor4 {
        let mut out = *self;
        for c in out.0.iter_mut() {
            *c *= s;
        }
        out
    }

    pub fn add(&self, other: &Spinor4) -> Spinor4 {
        let mut out = *self;
        for (c, o) in out.0.iter_mut().zip(other.0.iter()) {
            *c += *o;
        }
        out
    }

    pub fn sub(&self, other: &Spinor4) -> Spinor4 {
        let mut out = *self;
        for (c, o) in out.0.iter_mut().zip(other.0.iter()) {
            *c -= *o;
        }
        out
    }
}

const ZERO2: [[C64; 2]; 2] = [[ZERO, ZERO], [ZERO, ZERO]];

/// Pauli matrix `sigma_j`, `j` in `1..=3`.
pub fn pauli(j: usize) -> [[C64; 2]; 2] {
    match j {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("pauli index must be 1..=3, got {j}"),
    }
}

fn pauli_combo(direction: [f64; 3]) -> [[C64; 2]; 2] {
    let mut m = ZERO2;
    for (j, &d) in direction.iter().enumerate() {
        let s = pauli(j + 1);
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] += s[r][c] * d;
            }
        }
    }
    m
}

fn neg2(m: [[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = m;
    for row in out.iter_mut() {
        for e in row.iter_mut() {
            *e = -*e;
        }
    }
    out
}

const IDENT2: [[C64; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];

/// Dirac matrix `gamma^index` in the standard representation:
/// `gamma^0 = diag(I, -I)`, `gamma^j = [[0, sigma_j], [-sigma_j, 0]]`.
pub fn dirac_matrix(index: usize) -> Result<Matrix4, CliffordError> {
    match index {
        0 => Ok(Matrix4::from_blocks(IDENT2, ZERO2, ZERO2, neg2(IDENT2))),
        j @ 1..=3 => {
            let s = pauli(j);
            Ok(Matrix4::from_blocks(ZERO2, s, neg2(s), ZERO2))
        }
        other => Err(CliffordError::InvalidIndex(other)),
    }
}

/// `beta = gamma^0`.
pub fn beta() -> Matrix4 {
    dirac_matrix(0).unwrap()
}

/// `alpha_j = [[0, sigma_j], [sigma_j, 0]]`, so that `gamma^j = beta alpha_j`.
pub fn alpha(j: usize) -> Matrix4 {
    assert!((1..=3).contains(&j), "alpha index must be 1..=3");
    let s = pauli(j);
    Matrix4::from_blocks(ZERO2, s, s, ZERO2)
}

fn check_unit(direction: [f64; 3]) -> Result<(), CliffordError> {
    let norm = libm::sqrt(direction.iter().map(|d| d * d).sum());
    if libm::fabs(norm - 1.0) > 1e-12 {
        return Err(CliffordError::NonUnitDirection { norm });
    }
    Ok(())
}

/// `sigma_r = sum_j (x_j / r) sigma_j` as the upper-left 2x2 block content.
pub fn sigma_r(direction: [f64; 3]) -> Result<[[C64; 2]; 2], CliffordError> {
    check_unit(direction)?;
    Ok(pauli_combo(direction))
}

/// `alpha_r = sum_j (x_j / r) alpha_j`; hermitian and squares to the identity
/// for unit directions.
pub fn alpha_r(direction: [f64; 3]) -> Result<Matrix4, CliffordError> {
    check_unit(direction)?;
    let s = pauli_combo(direction);
    Ok(Matrix4::from_blocks(ZERO2, s, s, ZERO2))
}

/// `gamma^r = sum_j (x_j / r) gamma^j`.
pub fn gamma_r(direction: [f64; 3]) -> Result<Matrix4, CliffordError> {
    check_unit(direction)?;
    let s = pauli_combo(direction);
    Ok(Matrix4::from_blocks(ZERO2, s, neg2(s), ZERO2))
}

/// Anticommutator residual `gamma^a gamma^b + gamma^b gamma^a + 2 eta^{ab} I4`
/// for one index pair.
pub fn anticommutator_residual(a: usize, b: usize) -> Result<Matrix4, CliffordError> {
    let ga = dirac_matrix(a)?;
    let gb = dirac_matrix(b)?;
    let eta = MinkowskiMetric.component(a, b);
    Ok(ga * gb + gb * ga + Matrix4::identity().scale(C64::new(2.0 * eta, 0.0)))
}

/// Maximum absolute deviation of the Clifford anticommutation relation over
/// all 16 index pairs. Exactly zero in this representation.
pub fn check_anticommutation() -> f64 {
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            worst = worst.max(anticommutator_residual(a, b).unwrap().max_abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_squares_to_identity() {
        let g0 = dirac_matrix(0).unwrap();
        assert_eq!((g0 * g0).max_abs_diff(&Matrix4::identity()), 0.0);
    }

    #[test]
    fn gamma1_squares_to_minus_identity() {
        let g1 = dirac_matrix(1).unwrap();
        assert_eq!((g1 * g1).max_abs_diff(&-Matrix4::identity()), 0.0);
    }

    #[test]
    fn gamma0_fixes_first_basis_spinor() {
        let g0 = dirac_matrix(0).unwrap();
        let e0 = Spinor4([ONE, ZERO, ZERO, ZERO]);
        assert_eq!(g0.apply(&e0), e0);
    }

    #[test]
    fn anticommutation_is_exact() {
        assert_eq!(check_anticommutation(), 0.0);
        // Mixed pair vanishes, diagonal spatial pair gives -2 I4.
        assert_eq!(anticommutator_residual(0, 1).unwrap().max_abs(), 0.0);
        let g2 = dirac_matrix(2).unwrap();
        let anti = g2 * g2 + g2 * g2;
        assert_eq!(
            anti.max_abs_diff(&Matrix4::identity().scale(C64::new(-2.0, 0.0))),
            0.0
        );
    }

    #[test]
    fn beta_alpha_relations() {
        let b = beta();
        assert_eq!((b * b).max_abs_diff(&Matrix4::identity()), 0.0);
        for j in 1..=3 {
            let aj = alpha(j);
            assert_eq!((b * aj + aj * b).max_abs(), 0.0);
            // gamma^j = beta alpha_j.
            assert_eq!((b * aj).max_abs_diff(&dirac_matrix(j).unwrap()), 0.0);
        }
    }

    #[test]
    fn alpha_r_along_z_has_sigma3_blocks() {
        let m = alpha_r([0.0, 0.0, 1.0]).unwrap();
        let s3 = pauli(3);
        let expect = Matrix4::from_blocks(ZERO2, s3, s3, ZERO2);
        assert_eq!(m.max_abs_diff(&expect), 0.0);
    }

    #[test]
    fn alpha_r_squares_to_identity() {
        let d = [1.0 / libm::sqrt(2.0), 1.0 / libm::sqrt(2.0), 0.0];
        let m = alpha_r(d).unwrap();
        assert!((m * m).max_abs_diff(&Matrix4::identity()) < 1e-14);
        assert!(m.is_hermitian(1e-14));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(matches!(dirac_matrix(4), Err(CliffordError::InvalidIndex(4))));
        assert!(matches!(
            alpha_r([1.0, 1.0, 0.0]),
            Err(CliffordError::NonUnitDirection { .. })
        ));
    }
}
