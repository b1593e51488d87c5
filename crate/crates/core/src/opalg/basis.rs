use crate::error::{Error, Result};

use super::matrix::ComplexMatrix;

/// Product basis `{|s, b>}` of the qubit (`s in {0, 1}`) and the bath restricted
/// to at most one excitation (`b = 0` vacuum, `b = k` one quantum in mode `k`).
///
/// Flat index of `|s, b>` is `s * (M + 1) + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedBasis {
    modes: usize,
}

impl TruncatedBasis {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::param("M", "need at least one bath mode"));
        }
        Ok(Self { modes })
    }

    /// Number of bath modes `M`.
    #[inline]
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// `M + 1`
    #[inline]
    pub fn bath_dim(&self) -> usize {
        self.modes + 1
    }

    /// `D = 2(M + 1)`
    #[inline]
    pub fn dim(&self) -> usize {
        2 * (self.modes + 1)
    }

    #[inline]
    pub fn index(&self, s: usize, b: usize) -> usize {
        debug_assert!(s < 2 && b <= self.modes);
        s * (self.modes + 1) + b
    }

    /// Inverse of [`index`](Self::index).
    #[inline]
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / (self.modes + 1), i % (self.modes + 1))
    }

    pub(crate) fn check(&self, op: &'static str, a: &ComplexMatrix) -> Result<()> {
        if a.dim() != self.dim() {
            Err(Error::dim(op, self.dim(), a.dim()))
        } else {
            Ok(())
        }
    }

    pub fn tensor_sb(&self, sys: &ComplexMatrix, bath: &ComplexMatrix) -> Result<ComplexMatrix> {
        if sys.dim() != 2 {
            return Err(Error::dim("tensor_sb", 2, sys.dim()));
        }
        if bath.dim() != self.bath_dim() {
            return Err(Error::dim("tensor_sb", self.bath_dim(), bath.dim()));
        }
        let nb = self.bath_dim();
        Ok(ComplexMatrix::from_fn(self.dim(), |i, j| {
            sys[(i / nb, j / nb)] * bath[(i % nb, j % nb)]
        }))
    }

    /// `Tr_B A`, a 2x2 matrix.
    pub fn ptrace_bath(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check("ptrace_bath", a)?;
        let mut out = ComplexMatrix::zeros(2);
        for s in 0..2 {
            for t in 0..2 {
                out[(s, t)] = (0..self.bath_dim())
                    .map(|b| a[(self.index(s, b), self.index(t, b))])
                    .sum();
            }
        }
        Ok(out)
    }

    /// `Tr_S A`, an `(M+1)x(M+1)` matrix.
    pub fn ptrace_sys(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check("ptrace_sys", a)?;
        let nb = self.bath_dim();
        let mut out = ComplexMatrix::zeros(nb);
        for s in 0..2 {
            for b in 0..nb {
                let (row, out_row) = (a.row(self.index(s, b)), out.row_mut(b));
                for (o, &v) in out_row.iter_mut().zip(&row[s * nb..(s + 1) * nb]) {
                    *o += v;
                }
            }
        }
        Ok(out)
    }
}

/// `sys (x) bath` in the flat index of `basis`.
pub fn tensor_sb(
    sys: &ComplexMatrix,
    bath: &ComplexMatrix,
    basis: &TruncatedBasis,
) -> Result<ComplexMatrix> {
    basis.tensor_sb(sys, bath)
}

pub fn ptrace_bath(a: &ComplexMatrix, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
    basis.ptrace_bath(a)
}

pub fn ptrace_sys(a: &ComplexMatrix, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
    basis.ptrace_sys(a)
}
