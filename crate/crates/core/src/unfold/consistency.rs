use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::mesolve::MethodId;
use crate::model::{hi_sparse, system_mean_field, ModeSet};
use crate::opalg::{commutator, ComplexMatrix, TruncatedBasis};

use super::chi::gap_component;
use super::correlation::CorrelationOp;

const MINUS_I: C64 = C64::new(0.0, -1.0);

/// `-i [Tr_B(H_I(t) rho_B), rho_S] - i Tr_B [H_I(t), chi]`
pub fn universal_rhs(
    t: f64,
    chi: &CorrelationOp,
    rho_s: &ComplexMatrix,
    rho_b: &ComplexMatrix,
    modes: &ModeSet,
    basis: &TruncatedBasis,
) -> Result<ComplexMatrix> {
    let h = hi_sparse(modes, basis, t)?;
    let x = system_mean_field(&h, rho_b, basis)?;
    let mut out = commutator(&x, rho_s)?.scaled(MINUS_I);
    out.axpy(MINUS_I, &chi.ptrace_bath_commutator(&h, basis)?)?;
    Ok(out)
}

/// `-i Tr_B [H_I(omega; t), chi(omega; t)]` for every gap of a Lindblad correlation.
pub fn lindblad_gap_generators(
    t: f64,
    chi: &CorrelationOp,
    modes: &ModeSet,
    basis: &TruncatedBasis,
) -> Result<Vec<(f64, ComplexMatrix)>> {
    let gaps = chi
        .per_gap
        .as_ref()
        .ok_or(Error::param("chi", "per-gap correlations missing"))?;
    let h = hi_sparse(modes, basis, t)?;
    gaps.iter()
        .map(|g| {
            let hw = gap_component(&h, g.omega, modes.omega0(), basis);
            let c = crate::opalg::sparse_commutator(&hw, &g.chi)?.ptrace_bath(basis)?;
            Ok((g.omega, c.scaled(MINUS_I)))
        })
        .collect()
}

/// `|| rhs - reconstructed rhs ||_F`, with the reconstruction from `chi` through
/// the universal form (per gap for Lindblad).
#[allow(clippy::too_many_arguments)]
pub fn unfold_consistency(
    method: MethodId,
    t: f64,
    chi: &CorrelationOp,
    rho_s: &ComplexMatrix,
    rho_b_eff: &ComplexMatrix,
    rhs: &ComplexMatrix,
    modes: &ModeSet,
    basis: &TruncatedBasis,
) -> Result<f64> {
    let reconstructed = if method == MethodId::Lindblad && chi.per_gap.is_some() {
        let h = hi_sparse(modes, basis, t)?;
        let x = system_mean_field(&h, rho_b_eff, basis)?;
        let mut acc = commutator(&x, rho_s)?.scaled(MINUS_I);
        for (_, g) in lindblad_gap_generators(t, chi, modes, basis)? {
            acc += &g;
        }
        acc
    } else {
        universal_rhs(t, chi, rho_s, rho_b_eff, modes, basis)?
    };
    crate::opalg::hs_distance(rhs, &reconstructed)
}
