//! Correlation operators implied by each master equation, and the check that
//! each of them regenerates its own equation through
//! `d rho_S/dt = -i [Tr_B(H_I rho_B), rho_S] - i Tr_B [H_I, chi]`.

mod chi;
mod consistency;
mod correlation;

pub use chi::{
    chi_cr, chi_from_kernel, chi_from_memory, chi_lindblad_set, chi_mll, chi_nz2, chi_redfield, chi_tcl2,
    lindblad_gap_kernels, nz2_memory, vacuum_bath,
};
pub use consistency::{lindblad_gap_generators, universal_rhs, unfold_consistency};
pub use correlation::{ChiRepr, CorrelationOp, GapCorrelation};
