//! Mean-field pieces of the interaction: `Tr_B[H (1 (x) rho_B)]`,
//! `Tr_S[H (rho_S (x) 1)]` and the fluctuation operator `H~ = H - X (x) 1 - 1 (x) Y`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opalg::{ComplexMatrix, SparseOp, TruncatedBasis};

/// `X_S = Tr_B[H (1 (x) rho_B)]`, 2x2.
pub fn system_mean_field(h: &SparseOp, rho_b: &ComplexMatrix, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
    check(h, rho_b.dim(), basis.bath_dim(), basis)?;
    let mut x = ComplexMatrix::zeros(2);
    for &(i, j, v) in h.entries() {
        let ((s, b), (t, c)) = (basis.split(i), basis.split(j));
        x[(s, t)] += v * rho_b[(c, b)];
    }
    Ok(x)
}

/// `Y_B = Tr_S[H (rho_S (x) 1)]`, sparse `(M+1)x(M+1)`.
pub fn bath_mean_field(h: &SparseOp, rho_s: &ComplexMatrix, basis: &TruncatedBasis) -> Result<SparseOp> {
    check(h, rho_s.dim(), 2, basis)?;
    let t = h.entries().iter().map(|&(i, j, v)| {
        let ((s, b), (t, c)) = (basis.split(i), basis.split(j));
        (b, c, v * rho_s[(t, s)])
    });
    Ok(SparseOp::from_triplets(basis.bath_dim(), t))
}

/// `1_S (x) Y` for a bath operator `Y`.
pub fn embed_bath(y: &SparseOp, basis: &TruncatedBasis) -> Result<SparseOp> {
    if y.dim() != basis.bath_dim() {
        return Err(Error::dim("embed_bath", basis.bath_dim(), y.dim()));
    }
    let mut t = Vec::with_capacity(2 * y.nnz());
    for s in 0..2 {
        t.extend(y.entries().iter().map(|&(b, c, v)| (basis.index(s, b), basis.index(s, c), v)));
    }
    Ok(SparseOp::from_triplets(basis.dim(), t))
}

/// `H~ = H - X_S (x) 1 - 1 (x) Y_B`
pub fn h_tilde(h: &SparseOp, x_s: &ComplexMatrix, y_b: &SparseOp, basis: &TruncatedBasis) -> Result<SparseOp> {
    let xs = SparseOp::embed_system(x_s, basis)?;
    let yb = embed_bath(y_b, basis)?;
    h.sub(&xs)?.sub(&yb)
}

fn check(h: &SparseOp, found: usize, expected: usize, basis: &TruncatedBasis) -> Result<()> {
    if h.dim() != basis.dim() {
        return Err(Error::dim("mean field", basis.dim(), h.dim()));
    }
    if found != expected {
        return Err(Error::dim("mean field", expected, found));
    }
    Ok(())
}
