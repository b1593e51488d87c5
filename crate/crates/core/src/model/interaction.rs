use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::opalg::{ComplexMatrix, SparseOp, TruncatedBasis};

use super::spectral::ModeSet;

/// Interaction Hamiltonian and free-evolution generators in the truncated basis.
#[derive(Clone, Debug)]
pub struct Interaction {
    /// `H_I = sum_k g_k (A_k + A_k^dag)`
    pub h_i: ComplexMatrix,
    /// `A_k = |0, e_k><1, vac|`, one per mode (zero-based).
    pub a_ops: Vec<SparseOp>,
    /// Diagonal of `H_S = omega0 sigma_+ sigma_-` in the flat index.
    pub h_s_diag: Vec<f64>,
    /// Diagonal of `H_B = sum_k omega_k Sigma_+^k Sigma_-^k` in the flat index.
    pub h_b_diag: Vec<f64>,
}

pub(crate) fn check_modes(modes: &ModeSet, basis: &TruncatedBasis) -> Result<()> {
    if modes.len() != basis.modes() {
        Err(Error::dim("modes vs basis", basis.modes(), modes.len()))
    } else {
        Ok(())
    }
}

pub fn build_interaction(modes: &ModeSet, basis: &TruncatedBasis) -> Result<Interaction> {
    check_modes(modes, basis)?;
    let one = C64::new(1.0, 0.0);
    let a_ops = (1..=modes.len())
        .map(|b| SparseOp::from_triplets(basis.dim(), [(basis.index(0, b), basis.index(1, 0), one)]))
        .collect();
    let (h_s_diag, h_b_diag) = free_diagonals(modes, basis);
    Ok(Interaction {
        h_i: hi_sparse(modes, basis, 0.0)?.to_dense(),
        a_ops,
        h_s_diag,
        h_b_diag,
    })
}

fn free_diagonals(modes: &ModeSet, basis: &TruncatedBasis) -> (Vec<f64>, Vec<f64>) {
    (0..basis.dim())
        .map(|i| {
            let (s, b) = basis.split(i);
            let hs = if s == 1 { modes.omega0() } else { 0.0 };
            let hb = if b == 0 { 0.0 } else { modes.omegas()[b - 1] };
            (hs, hb)
        })
        .unzip()
}

/// Diagonal of `H_S + H_B`: `E(s, b) = omega0 s + omega_b`.
pub fn free_energies(modes: &ModeSet, basis: &TruncatedBasis) -> Result<Vec<f64>> {
    check_modes(modes, basis)?;
    let (hs, hb) = free_diagonals(modes, basis);
    Ok(hs.iter().zip(&hb).map(|(a, b)| a + b).collect())
}

/// `sum_k g_k (c_k A_k + conj(c_k) A_k^dag)`; Hermitian by construction.
pub fn mode_sum_op(
    modes: &ModeSet,
    basis: &TruncatedBasis,
    mut coef: impl FnMut(usize) -> C64,
) -> Result<SparseOp> {
    check_modes(modes, basis)?;
    let excited = basis.index(1, 0);
    let mut t = Vec::with_capacity(2 * modes.len());
    for k in 0..modes.len() {
        let v = modes.gs()[k] * coef(k);
        let row = basis.index(0, k + 1);
        t.push((row, excited, v));
        t.push((excited, row, v.conj()));
    }
    Ok(SparseOp::from_triplets(basis.dim(), t))
}

/// `H_I(t)` with `A_k(t) = A_k exp(-i (omega0 - omega_k) t)`.
pub fn hi_sparse(modes: &ModeSet, basis: &TruncatedBasis, t: f64) -> Result<SparseOp> {
    mode_sum_op(modes, basis, |k| C64::from_polar(1.0, -modes.detuning(k) * t))
}

pub fn hi_interaction_picture(modes: &ModeSet, basis: &TruncatedBasis, t: f64) -> Result<ComplexMatrix> {
    Ok(hi_sparse(modes, basis, t)?.to_dense())
}

/// `e^{i H0 t} A e^{-i H0 t}` for diagonal `H0` with entries `energies`.
pub fn rotate_diagonal(a: &ComplexMatrix, energies: &[f64], t: f64) -> Result<ComplexMatrix> {
    if energies.len() != a.dim() {
        return Err(Error::dim("rotate_diagonal", a.dim(), energies.len()));
    }
    Ok(ComplexMatrix::from_fn(a.dim(), |i, j| {
        a[(i, j)] * C64::from_polar(1.0, (energies[i] - energies[j]) * t)
    }))
}
