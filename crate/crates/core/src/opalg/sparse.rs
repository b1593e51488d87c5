//! Coordinate-format operators for the many `O(M)`-entry objects of the model
//! (`H_I(t)`, memory kernels, correlations built on the vacuum bath state).
//!
//! Results that leave this module as public values are [`ComplexMatrix`];
//! `SparseOp` only keeps the per-step work proportional to the number of
//! nonzeros.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fmath::sqrt;

use super::basis::TruncatedBasis;
use super::matrix::{ComplexMatrix, ZERO};

/// Square operator stored as row-major sorted `(row, col, value)` triplets
/// with unique positions.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOp {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl SparseOp {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    /// Duplicate positions are summed; exact zeros are kept out.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let mut entries: Vec<_> = triplets.into_iter().collect();
        debug_assert!(entries.iter().all(|&(i, j, _)| i < dim && j < dim));
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(entries.len());
        for (i, j, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }
        merged.retain(|e| e.2 != ZERO);
        Self { dim, entries: merged }
    }

    pub fn from_dense(a: &ComplexMatrix) -> Self {
        let n = a.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for (j, &v) in a.row(i).iter().enumerate() {
                if v != ZERO {
                    entries.push((i, j, v));
                }
            }
        }
        Self { dim: n, entries }
    }

    /// `sys (x) 1_B`
    pub fn embed_system(sys: &ComplexMatrix, basis: &TruncatedBasis) -> Result<Self> {
        if sys.dim() != 2 {
            return Err(Error::dim("embed_system", 2, sys.dim()));
        }
        let mut t = Vec::new();
        for s in 0..2 {
            for u in 0..2 {
                let v = sys[(s, u)];
                if v != ZERO {
                    t.extend((0..basis.bath_dim()).map(|b| (basis.index(s, b), basis.index(u, b), v)));
                }
            }
        }
        Ok(Self::from_triplets(basis.dim(), t))
    }

    /// `sys (x) bath` with both factors given densely; zero entries skipped.
    pub fn tensor_sb(sys: &ComplexMatrix, bath: &ComplexMatrix, basis: &TruncatedBasis) -> Result<Self> {
        if sys.dim() != 2 {
            return Err(Error::dim("tensor_sb", 2, sys.dim()));
        }
        if bath.dim() != basis.bath_dim() {
            return Err(Error::dim("tensor_sb", basis.bath_dim(), bath.dim()));
        }
        let nb = basis.bath_dim();
        let mut entries = Vec::new();
        for s in 0..2 {
            for b in 0..nb {
                for u in 0..2 {
                    let x = sys[(s, u)];
                    if x == ZERO {
                        continue;
                    }
                    for c in 0..nb {
                        let y = bath[(b, c)];
                        if y != ZERO {
                            entries.push((basis.index(s, b), basis.index(u, c), x * y));
                        }
                    }
                }
            }
        }
        Ok(Self {
            dim: basis.dim(),
            entries,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn entries(&self) -> &[(usize, usize, C64)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries
            .binary_search_by_key(&(i, j), |&(a, b, _)| (a, b))
            .map(|k| self.entries[k].2)
            .unwrap_or(ZERO)
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim);
        for &(i, j, v) in &self.entries {
            m[(i, j)] = v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.dim, self.entries.iter().map(|&(i, j, v)| (j, i, v.conj())))
    }

    pub fn scaled(&self, alpha: C64) -> Self {
        Self::from_triplets(self.dim, self.entries.iter().map(|&(i, j, v)| (i, j, alpha * v)))
    }

    /// `alpha * self + beta * other`
    pub fn combine(&self, alpha: C64, other: &Self, beta: C64) -> Result<Self> {
        self.check("combine", other)?;
        Ok(Self::from_triplets(
            self.dim,
            self.entries
                .iter()
                .map(|&(i, j, v)| (i, j, alpha * v))
                .chain(other.entries.iter().map(|&(i, j, v)| (i, j, beta * v))),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))
    }

    fn row_ranges(&self) -> Vec<(usize, usize)> {
        let mut ranges = vec![(0usize, 0usize); self.dim];
        let mut k = 0;
        for (i, r) in ranges.iter_mut().enumerate() {
            let start = k;
            while k < self.entries.len() && self.entries[k].0 == i {
                k += 1;
            }
            *r = (start, k);
        }
        ranges
    }

    /// Sparse product (row-by-row accumulation).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check("mul", other)?;
        let rows_b = other.row_ranges();
        let mut acc = vec![ZERO; self.dim];
        let mut touched = vec![false; self.dim];
        let mut cols: Vec<usize> = Vec::new();
        let mut entries = Vec::new();
        let mut k = 0;
        while k < self.entries.len() {
            let i = self.entries[k].0;
            while k < self.entries.len() && self.entries[k].0 == i {
                let (_, m, a) = self.entries[k];
                let (lo, hi) = rows_b[m];
                for &(_, j, b) in &other.entries[lo..hi] {
                    if !touched[j] {
                        touched[j] = true;
                        cols.push(j);
                    }
                    acc[j] += a * b;
                }
                k += 1;
            }
            cols.sort_unstable();
            for &j in &cols {
                if acc[j] != ZERO {
                    entries.push((i, j, acc[j]));
                }
                acc[j] = ZERO;
                touched[j] = false;
            }
            cols.clear();
        }
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// `self * x` for dense `x`.
    pub fn mul_dense(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dense("mul_dense", x)?;
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for &(i, m, a) in &self.entries {
            for (o, s) in out.row_mut(i).iter_mut().zip(x.row(m)) {
                *o += a * s;
            }
        }
        Ok(out)
    }

    /// `x * self` for dense `x`.
    pub fn dense_mul(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dense("dense_mul", x)?;
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            let xr = x.row(r);
            let mut row = vec![ZERO; n];
            for &(m, j, a) in &self.entries {
                row[j] += xr[m] * a;
            }
            out.row_mut(r).copy_from_slice(&row);
        }
        Ok(out)
    }

    /// `[self, x]` for Hermitian `self` and Hermitian dense `x`, using
    /// `[H, X] = HX - (HX)^dag`.
    pub fn commutator_hermitian_dense(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let hx = self.mul_dense(x)?;
        let n = self.dim;
        Ok(ComplexMatrix::from_fn(n, |i, j| hx[(i, j)] - hx[(j, i)].conj()))
    }

    pub fn trace(&self) -> C64 {
        self.entries.iter().filter(|e| e.0 == e.1).map(|e| e.2).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.norm_sqr())
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for &(i, j, v) in &self.entries {
            dev = dev.max((v - self.get(j, i).conj()).norm());
        }
        dev
    }

    /// `sum_ij conj(x_ij) self_ij`
    pub fn inner_with_dense(&self, x: &ComplexMatrix) -> Result<C64> {
        self.check_dense("inner_with_dense", x)?;
        Ok(self.entries.iter().map(|&(i, j, v)| x[(i, j)].conj() * v).sum())
    }

    pub fn ptrace_bath(&self, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        self.check_basis("ptrace_bath", basis)?;
        let mut out = ComplexMatrix::zeros(2);
        for &(i, j, v) in &self.entries {
            let ((s, b), (t, c)) = (basis.split(i), basis.split(j));
            if b == c {
                out[(s, t)] += v;
            }
        }
        Ok(out)
    }

    pub fn ptrace_sys(&self, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        self.check_basis("ptrace_sys", basis)?;
        let mut out = ComplexMatrix::zeros(basis.bath_dim());
        for &(i, j, v) in &self.entries {
            let ((s, b), (t, c)) = (basis.split(i), basis.split(j));
            if s == t {
                out[(b, c)] += v;
            }
        }
        Ok(out)
    }

    /// `Tr_B [self, x]` without forming the product.
    pub fn ptrace_bath_commutator(&self, x: &ComplexMatrix, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        self.check_basis("ptrace_bath_commutator", basis)?;
        self.check_dense("ptrace_bath_commutator", x)?;
        let mut out = ComplexMatrix::zeros(2);
        for &(i, j, h) in &self.entries {
            // (H x)[(s,b),(t,b)] picks up H[(s,b), j] x[j, (t,b)]
            let (s, b) = basis.split(i);
            for t in 0..2 {
                out[(s, t)] += h * x[(j, basis.index(t, b))];
            }
            // (x H)[(s,c),(t,c)] picks up x[(s,c), i] H[i, (t,c)]
            let (t, c) = basis.split(j);
            for s in 0..2 {
                out[(s, t)] -= x[(basis.index(s, c), i)] * h;
            }
        }
        Ok(out)
    }

    /// `Tr_B [self, x]` for a sparse `x`; never forms the (possibly dense) product.
    pub fn ptrace_bath_commutator_sparse(&self, x: &SparseOp, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        self.check_basis("ptrace_bath_commutator_sparse", basis)?;
        self.check("ptrace_bath_commutator_sparse", x)?;
        let mut out = ComplexMatrix::zeros(2);
        for &(i, j, h) in &self.entries {
            let (s, b) = basis.split(i);
            for t in 0..2 {
                out[(s, t)] += h * x.get(j, basis.index(t, b));
            }
            let (t, c) = basis.split(j);
            for s in 0..2 {
                out[(s, t)] -= x.get(basis.index(s, c), i) * h;
            }
        }
        Ok(out)
    }

    /// `Tr_S [self, x]` without forming the product.
    pub fn ptrace_sys_commutator(&self, x: &ComplexMatrix, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        self.check_basis("ptrace_sys_commutator", basis)?;
        self.check_dense("ptrace_sys_commutator", x)?;
        let nb = basis.bath_dim();
        let mut out = ComplexMatrix::zeros(nb);
        for &(i, j, h) in &self.entries {
            let (s, b) = basis.split(i);
            let xr = &x.row(j)[s * nb..(s + 1) * nb];
            for (o, &v) in out.row_mut(b).iter_mut().zip(xr) {
                *o += h * v;
            }
            let (t, c) = basis.split(j);
            for bb in 0..nb {
                out[(bb, c)] -= x[(basis.index(t, bb), i)] * h;
            }
        }
        Ok(out)
    }

    fn check(&self, op: &'static str, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::dim(op, self.dim, other.dim))
        } else {
            Ok(())
        }
    }

    fn check_dense(&self, op: &'static str, x: &ComplexMatrix) -> Result<()> {
        if self.dim != x.dim() {
            Err(Error::dim(op, self.dim, x.dim()))
        } else {
            Ok(())
        }
    }

    fn check_basis(&self, op: &'static str, basis: &TruncatedBasis) -> Result<()> {
        if self.dim != basis.dim() {
            Err(Error::dim(op, basis.dim(), self.dim))
        } else {
            Ok(())
        }
    }
}

/// `[A, B]` for sparse operands.
pub fn sparse_commutator(a: &SparseOp, b: &SparseOp) -> Result<SparseOp> {
    a.mul(b)?.sub(&b.mul(a)?)
}
