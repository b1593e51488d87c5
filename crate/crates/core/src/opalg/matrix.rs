use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fmath::sqrt;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major data; `data.len()` must be a perfect square.
    pub fn from_row_major(data: Vec<C64>) -> Result<Self> {
        let dim = (sqrt(data.len() as f64) + 0.5) as usize;
        if dim * dim != data.len() {
            return Err(Error::dim("from_row_major", dim * dim, data.len()));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| rows[i][j])
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// `|u><v|`
    pub fn outer(u: &[C64], v: &[C64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::dim("outer", u.len(), v.len()));
        }
        Ok(Self::from_fn(u.len(), |i, j| u[i] * v[j].conj()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [C64] {
        &mut self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn fill_zero(&mut self) {
        self.data.iter_mut().for_each(|z| *z = ZERO);
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.data[j * n + i].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Sum of squared moduli, `Tr(A^dag A)`.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.norm_sqr())
    }

    pub fn scaled(&self, alpha: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * alpha).collect(),
        }
    }

    pub fn scale_mut(&mut self, alpha: C64) {
        self.data.iter_mut().for_each(|z| *z *= alpha);
    }

    /// `self += alpha * other`
    pub fn axpy(&mut self, alpha: C64, other: &Self) -> Result<()> {
        self.check_dim("axpy", other)?;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
        Ok(())
    }

    /// Matrix product. Zero entries of either factor are skipped, so products
    /// with a sparse operand stored densely cost `O(nnz * dim)`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim("matmul", other)?;
        let n = self.dim;
        let rows_b: Vec<Vec<(usize, C64)>> = (0..n)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| **z != ZERO)
                    .map(|(j, &z)| (j, z))
                    .collect()
            })
            .collect();
        let mut out = Self::zeros(n);
        for i in 0..n {
            let (a_row, out_row) = (self.row(i), &mut out.data[i * n..(i + 1) * n]);
            for (k, &a) in a_row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for &(j, b) in &rows_b[k] {
                    out_row[j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim("max_abs_diff", other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_{ij} |A_ij - conj(A_ji)|`
    pub fn hermitian_deviation(&self) -> f64 {
        // Tiled so that the transposed reads stay in cache.
        const TILE: usize = 32;
        let n = self.dim;
        let mut dev = 0.0f64;
        for i0 in (0..n).step_by(TILE) {
            for j0 in (i0..n).step_by(TILE) {
                for i in i0..(i0 + TILE).min(n) {
                    for j in j0.max(i)..(j0 + TILE).min(n) {
                        let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
                        dev = dev.max(d);
                    }
                }
            }
        }
        sqrt(dev)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(A + A^dag) / 2`
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| 0.5 * (self.data[i * n + j] + self.data[j * n + i].conj()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn check_dim(&self, op: &'static str, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::dim(op, self.dim, other.dim))
        } else {
            Ok(())
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

// The arithmetic operators panic on a dimension mismatch; the fallible
// versions are `axpy` and `matmul`.

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        self.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        self.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a -= b);
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: C64) -> ComplexMatrix {
        self.scaled(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scaled(C64::new(rhs, 0.0))
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scaled(C64::new(-1.0, 0.0))
    }
}

/// `[A, B] = AB - BA`
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut ab = a.matmul(b)?;
    ab -= &b.matmul(a)?;
    Ok(ab)
}

/// `{A, B} = AB + BA`
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut ab = a.matmul(b)?;
    ab += &b.matmul(a)?;
    Ok(ab)
}

/// Qubit operators in the computational basis `{|0>, |1>}`, with `|1>` excited.
pub mod qubit {
    use super::*;

    const O: C64 = C64::new(0.0, 0.0);
    const I: C64 = C64::new(1.0, 0.0);
    const J: C64 = C64::new(0.0, 1.0);

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_rows([[O, I], [I, O]])
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows([[O, -J], [J, O]])
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_rows([[I, O], [O, -I]])
    }

    /// `sigma_- = |0><1|`
    pub fn lowering() -> ComplexMatrix {
        ComplexMatrix::from_rows([[O, I], [O, O]])
    }

    /// `sigma_+ = |1><0|`
    pub fn raising() -> ComplexMatrix {
        ComplexMatrix::from_rows([[O, O], [I, O]])
    }

    /// `sigma_+ sigma_- = |1><1|`
    pub fn excited_projector() -> ComplexMatrix {
        ComplexMatrix::from_rows([[O, O], [O, I]])
    }

    /// `|psi><psi|` for `psi = (a, b)`.
    pub fn pure(a: C64, b: C64) -> ComplexMatrix {
        ComplexMatrix::outer(&[a, b], &[a, b]).expect("equal lengths")
    }

    /// `|+><+|` with `|+> = (|0> + |1>)/sqrt(2)`.
    pub fn plus_state() -> ComplexMatrix {
        let s = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        pure(s, s)
    }
}
