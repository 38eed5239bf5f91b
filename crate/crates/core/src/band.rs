//! Complex banded linear algebra: storage, matrix-vector products, and LU
//! factorization with partial pivoting (LAPACK-style band layout).

use alloc::vec;
use alloc::vec::Vec;

use crate::C64;

/// The factorization hit an exactly zero pivot column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularMatrix;

/// Banded `n x n` complex matrix with `kl` sub- and `ku` superdiagonals.
///
/// Storage reserves `kl` extra superdiagonals so the factorization can absorb
/// pivoting fill. Entry `(i, j)` lives at band row `kl + ku + i - j`.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<C64>,
}

impl BandMatrix {
    pub fn zero(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        BandMatrix { n, kl, ku, data: vec![C64::new(0.0, 0.0); ldab * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.n);
        let row = self.kl + self.ku + i - j;
        row * self.n + j
    }

    /// True when `(i, j)` lies inside the declared band (not the fill area).
    #[inline]
    fn in_band(&self, i: usize, j: usize) -> bool {
        (j as isize - i as isize) <= self.ku as isize
            && (i as isize - j as isize) <= self.kl as isize
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        if (j as isize - i as isize) > (self.ku + self.kl) as isize
            || (i as isize - j as isize) > self.kl as isize
        {
            return C64::new(0.0, 0.0);
        }
        self.data[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside band");
        let idx = self.idx(i, j);
        self.data[idx] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: C64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside band");
        let idx = self.idx(i, j);
        self.data[idx] += v;
    }

    /// `y = A x` over the declared band.
    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.kl);
            let jhi = (i + self.ku).min(self.n - 1);
            let mut acc = C64::new(0.0, 0.0);
            for j in jlo..=jhi {
                acc += self.data[self.idx(i, j)] * x[j];
            }
            y[i] = acc;
        }
    }

    /// In-place LU factorization with partial pivoting.
    pub fn factor(mut self) -> Result<BandLu, SingularMatrix> {
        let n = self.n;
        let kl = self.kl;
        let ku = self.ku;
        let width = kl + ku; // widest superdiagonal reach after pivoting
        let mut ipiv = vec![0usize; n];
        for j in 0..n {
            // Pivot search in column j, rows j..=j+kl.
            let imax = (j + kl).min(n - 1);
            let mut piv = j;
            let mut best = self.data[self.idx(j, j)].norm();
            for i in (j + 1)..=imax {
                let v = self.data[self.idx(i, j)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                return Err(SingularMatrix);
            }
            ipiv[j] = piv;
            if piv != j {
                // Swap rows j and piv over columns j..=j+width.
                let khi = (j + width).min(n - 1);
                for k in j..=khi {
                    let a = self.idx(j, k);
                    let b = self.idx(piv, k);
                    self.data.swap(a, b);
                }
            }
            let diag = self.data[self.idx(j, j)];
            for i in (j + 1)..=imax {
                let m = self.data[self.idx(i, j)] / diag;
                let mi = self.idx(i, j);
                self.data[mi] = m;
                let khi = (j + width).min(n - 1);
                for k in (j + 1)..=khi {
                    let jk = self.idx(j, k);
                    let ik = self.idx(i, k);
                    let upd = m * self.data[jk];
                    self.data[ik] -= upd;
                }
            }
        }
        Ok(BandLu { mat: self, ipiv })
    }
}

/// Factored band matrix; solves `A x = b` by forward/back substitution.
#[derive(Debug, Clone)]
pub struct BandLu {
    mat: BandMatrix,
    ipiv: Vec<usize>,
}

impl BandLu {
    pub fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.mat.n;
        let kl = self.mat.kl;
        let width = self.mat.kl + self.mat.ku;
        // P and L sweep.
        for j in 0..n {
            let piv = self.ipiv[j];
            if piv != j {
                b.swap(j, piv);
            }
            let imax = (j + kl).min(n - 1);
            for i in (j + 1)..=imax {
                let m = self.mat.data[self.mat.idx(i, j)];
                let upd = m * b[j];
                b[i] -= upd;
            }
        }
        // U backsubstitution.
        for j in (0..n).rev() {
            let khi = (j + width).min(n - 1);
            let mut acc = b[j];
            for k in (j + 1)..=khi {
                acc -= self.mat.data[self.mat.idx(j, k)] * b[k];
            }
            b[j] = acc / self.mat.data[self.mat.idx(j, j)];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    fn random_banded(n: usize, kl: usize, ku: usize, rng: &mut SplitMix64) -> BandMatrix {
        let mut m = BandMatrix::zero(n, kl, ku);
        for i in 0..n {
            let jlo = i.saturating_sub(kl);
            let jhi = (i + ku).min(n - 1);
            for j in jlo..=jhi {
                m.set(i, j, C64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
            }
            // keep it comfortably solvable
            m.add_to(i, i, C64::new(0.5, 3.0));
        }
        m
    }

    #[test]
    fn lu_solves_random_band_systems() {
        let mut rng = SplitMix64::new(0xba2d_0b0b);
        for &(n, kl, ku) in &[(5usize, 1usize, 1usize), (40, 2, 2), (173, 2, 2), (64, 3, 1)] {
            let a = random_banded(n, kl, ku, &mut rng);
            let x_true: Vec<C64> = (0..n)
                .map(|_| C64::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)))
                .collect();
            let mut b = vec![C64::new(0.0, 0.0); n];
            a.matvec(&x_true, &mut b);
            let lu = a.factor().unwrap();
            lu.solve_in_place(&mut b);
            let worst = b
                .iter()
                .zip(x_true.iter())
                .map(|(g, w)| (g - w).norm())
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-10, "n={n} kl={kl} ku={ku}: {worst:.3e}");
        }
    }

    #[test]
    fn pivoting_handles_zero_leading_diagonal() {
        // First diagonal entry zero forces an immediate row interchange.
        let mut a = BandMatrix::zero(4, 1, 1);
        a.set(0, 0, C64::new(0.0, 0.0));
        a.set(0, 1, C64::new(1.0, 0.0));
        a.set(1, 0, C64::new(2.0, 0.0));
        a.set(1, 1, C64::new(1.0, 0.0));
        a.set(1, 2, C64::new(0.5, 0.0));
        a.set(2, 1, C64::new(-1.0, 0.0));
        a.set(2, 2, C64::new(3.0, 0.0));
        a.set(2, 3, C64::new(1.0, 0.0));
        a.set(3, 2, C64::new(1.0, 0.0));
        a.set(3, 3, C64::new(2.0, 0.0));
        let x_true = vec![
            C64::new(1.0, 0.0),
            C64::new(-1.0, 2.0),
            C64::new(0.5, 0.0),
            C64::new(2.0, -1.0),
        ];
        let mut b = vec![C64::new(0.0, 0.0); 4];
        a.matvec(&x_true, &mut b);
        let lu = a.factor().unwrap();
        lu.solve_in_place(&mut b);
        for (g, w) in b.iter().zip(x_true.iter()) {
            assert!((g - w).norm() < 1e-12);
        }
    }
}
