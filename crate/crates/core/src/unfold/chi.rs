use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::mesolve::MethodId;
use crate::model::{
    bath_mean_field, check_modes, embed_bath, h_tilde, hi_sparse, redfield_k_sparse, system_mean_field,
    tcl2_k_sparse, ModeSet,
};
use crate::opalg::{sparse_commutator, ComplexMatrix, SparseOp, TruncatedBasis};

use super::correlation::{CorrelationOp, GapCorrelation};

const MINUS_I: C64 = C64::new(0.0, -1.0);

/// `|vac><vac|` on the truncated bath.
pub fn vacuum_bath(basis: &TruncatedBasis) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(basis.bath_dim());
    v[(0, 0)] = C64::new(1.0, 0.0);
    v
}

/// `C - I_S/2 (x) Tr_S C - [Tr_B C (x) I_B/(M+1)]`, the bracket only with `bath_term`.
fn remove_partial_traces(c: &SparseOp, basis: &TruncatedBasis, bath_term: bool) -> Result<SparseOp> {
    let tr_s = SparseOp::from_dense(&c.ptrace_sys(basis)?).scaled(C64::new(0.5, 0.0));
    let mut out = c.sub(&embed_bath(&tr_s, basis)?)?;
    if bath_term {
        let tr_b = c.ptrace_bath(basis)?;
        // Vanishes for a vacuum bath factor; kept for general reference states.
        let scaled = tr_b.scaled(C64::new(1.0 / basis.bath_dim() as f64, 0.0));
        out = out.sub(&SparseOp::embed_system(&scaled, basis)?)?;
    }
    Ok(out)
}

/// `-i([K, rho_S (x) |vac><vac|] - I_S (x) Tr_S[..] - Tr_B[..] (x) I_B)` for a kernel `K`.
pub fn chi_from_kernel(k: &SparseOp, rho_s: &ComplexMatrix, basis: &TruncatedBasis) -> Result<SparseOp> {
    let p = SparseOp::tensor_sb(rho_s, &vacuum_bath(basis), basis)?;
    let c = sparse_commutator(k, &p)?;
    Ok(remove_partial_traces(&c, basis, true)?.scaled(MINUS_I))
}

fn check_state(rho_s: &ComplexMatrix) -> Result<()> {
    if rho_s.dim() != 2 {
        Err(Error::dim("rho_S", 2, rho_s.dim()))
    } else {
        Ok(())
    }
}

/// Time-local second-order correlation with `K_t = int_0^t H_I(s) ds`.
pub fn chi_tcl2(rho_s: &ComplexMatrix, modes: &ModeSet, basis: &TruncatedBasis, t: f64) -> Result<CorrelationOp> {
    check_state(rho_s)?;
    let k = tcl2_k_sparse(modes, basis, t)?;
    Ok(CorrelationOp::sparse(MethodId::Tcl2, t, chi_from_kernel(&k, rho_s, basis)?))
}

/// Markovian correlation with `K(t) = int_0^inf H_I(t - s) ds`.
pub fn chi_redfield(
    rho_s: &ComplexMatrix,
    modes: &ModeSet,
    basis: &TruncatedBasis,
    t: f64,
    b_width: f64,
) -> Result<CorrelationOp> {
    check_state(rho_s)?;
    let k = redfield_k_sparse(modes, basis, t, b_width)?;
    Ok(CorrelationOp::sparse(MethodId::Redfield, t, chi_from_kernel(&k, rho_s, basis)?))
}

/// `chi^R(t) - chi^R(0)`, the second term built from the initial state.
pub fn chi_cr(
    rho_s: &ComplexMatrix,
    rho_s0: &ComplexMatrix,
    modes: &ModeSet,
    basis: &TruncatedBasis,
    t: f64,
    b_width: f64,
) -> Result<CorrelationOp> {
    check_state(rho_s)?;
    check_state(rho_s0)?;
    let now = chi_from_kernel(&redfield_k_sparse(modes, basis, t, b_width)?, rho_s, basis)?;
    let initial = chi_from_kernel(&redfield_k_sparse(modes, basis, 0.0, b_width)?, rho_s0, basis)?;
    Ok(CorrelationOp::sparse(MethodId::Cr, t, now.sub(&initial)?))
}

/// `-i t [H~(t), rho_S (x) rho_B(0)]`
pub fn chi_mll(
    rho_s: &ComplexMatrix,
    rho_b0: &ComplexMatrix,
    modes: &ModeSet,
    basis: &TruncatedBasis,
    t: f64,
) -> Result<CorrelationOp> {
    check_state(rho_s)?;
    let h = hi_sparse(modes, basis, t)?;
    let x = system_mean_field(&h, rho_b0, basis)?;
    let y = bath_mean_field(&h, rho_s, basis)?;
    let ht = h_tilde(&h, &x, &y, basis)?;
    let p = SparseOp::tensor_sb(rho_s, rho_b0, basis)?;
    let c = sparse_commutator(&ht, &p)?;
    Ok(CorrelationOp::sparse(MethodId::Mll, t, c.scaled(MINUS_I * t)))
}

/// `int_0^t [H_I(s), rho_S(s) (x) |vac><vac|] ds` by the trapezoid rule on
/// samples `history[i] = rho_S(i dt)`.
pub fn nz2_memory(history: &[ComplexMatrix], dt: f64, modes: &ModeSet, basis: &TruncatedBasis) -> Result<SparseOp> {
    if history.is_empty() {
        return Err(Error::EmptyHistory);
    }
    check_modes(modes, basis)?;
    let vac = vacuum_bath(basis);
    let n = history.len();
    let mut acc = SparseOp::zeros(basis.dim());
    for (i, rho) in history.iter().enumerate() {
        check_state(rho)?;
        if n == 1 {
            break;
        }
        let w = if i == 0 || i == n - 1 { 0.5 * dt } else { dt };
        let h = hi_sparse(modes, basis, i as f64 * dt)?;
        let c = sparse_commutator(&h, &SparseOp::tensor_sb(rho, &vac, basis)?)?;
        acc = acc.combine(C64::new(1.0, 0.0), &c, C64::new(w, 0.0))?;
    }
    Ok(acc)
}

/// `-i(I - I_S (x) Tr_S I - Tr_B I (x) I_B)` for a memory integral `I`.
pub fn chi_from_memory(memory: &SparseOp, basis: &TruncatedBasis) -> Result<SparseOp> {
    Ok(remove_partial_traces(memory, basis, true)?.scaled(MINUS_I))
}

/// Nakajima-Zwanzig correlation from the sampled history `rho_S(i dt)`,
/// at time `(len - 1) dt`.
pub fn chi_nz2(history: &[ComplexMatrix], dt: f64, modes: &ModeSet, basis: &TruncatedBasis) -> Result<CorrelationOp> {
    let memory = nz2_memory(history, dt, modes, basis)?;
    let t = (history.len() - 1) as f64 * dt;
    Ok(CorrelationOp::sparse(MethodId::Nz2, t, chi_from_memory(&memory, basis)?))
}

/// Bohr frequencies `E - E'` of `H_S = omega0 sigma_+ sigma_-`.
fn bohr_frequencies(omega0: f64) -> [f64; 3] {
    let energies = [0.0, omega0];
    let mut out = [0.0; 3];
    out[1] = energies[1] - energies[0];
    out[2] = energies[0] - energies[1];
    out
}

/// `O(omega) = sum_{E' - E = omega} (P_E (x) 1) O (P_E' (x) 1)`
pub(crate) fn gap_component(op: &SparseOp, omega: f64, omega0: f64, basis: &TruncatedBasis) -> SparseOp {
    let energy = |s: usize| if s == 1 { omega0 } else { 0.0 };
    SparseOp::from_triplets(
        op.dim(),
        op.entries().iter().copied().filter(|&(i, j, _)| {
            let (s, t) = (basis.split(i).0, basis.split(j).0);
            crate::fmath::abs(energy(t) - energy(s) - omega) < 1e-12
        }),
    )
}

/// Nonzero components `H_I(omega; t)` and `int_0^inf H_I(-omega; t - s) ds`.
pub fn lindblad_gap_kernels(
    modes: &ModeSet,
    basis: &TruncatedBasis,
    t: f64,
    b_width: f64,
) -> Result<Vec<(f64, SparseOp, SparseOp)>> {
    let h = hi_sparse(modes, basis, t)?;
    let k = redfield_k_sparse(modes, basis, t, b_width)?;
    let w0 = modes.omega0();
    Ok(bohr_frequencies(w0)
        .iter()
        .map(|&w| (w, gap_component(&h, w, w0, basis), gap_component(&k, -w, w0, basis)))
        .filter(|(_, h, k)| h.nnz() > 0 || k.nnz() > 0)
        .collect())
}

/// Per-gap correlations `chi(omega; t)`; `op` of the result holds their sum.
pub fn chi_lindblad_set(
    rho_s: &ComplexMatrix,
    modes: &ModeSet,
    basis: &TruncatedBasis,
    t: f64,
    b_width: f64,
) -> Result<CorrelationOp> {
    check_state(rho_s)?;
    let p = SparseOp::tensor_sb(rho_s, &vacuum_bath(basis), basis)?;
    let mut total = SparseOp::zeros(basis.dim());
    let mut gaps = Vec::new();
    for (omega, _, k) in lindblad_gap_kernels(modes, basis, t, b_width)? {
        let c = sparse_commutator(&k, &p)?;
        let chi = remove_partial_traces(&c, basis, false)?.scaled(MINUS_I);
        total = total.add(&chi)?;
        gaps.push(GapCorrelation { omega, chi });
    }
    let mut op = CorrelationOp::sparse(MethodId::Lindblad, t, total);
    op.per_gap = Some(gaps);
    Ok(op)
}
