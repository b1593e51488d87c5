//! Bath specification, interaction Hamiltonian and second-order kernels.

mod interaction;
mod kernels;
mod meanfield;
mod spectral;

pub use interaction::{
    build_interaction, free_energies, hi_interaction_picture, hi_sparse, mode_sum_op, rotate_diagonal,
    Interaction,
};
pub(crate) use interaction::check_modes;
pub use kernels::{
    cr_rates, cr_sine_cosine_sums, gaussian_delta, kernel_l, phi, redfield_k, redfield_k_sparse,
    redfield_rates, tcl2_k_sparse, tcl2_rates, RatePair, RESONANCE_TOL,
};
pub(crate) use kernels::half_line_transform;
pub use meanfield::{bath_mean_field, embed_bath, h_tilde, system_mean_field};
pub use spectral::{discretize, sum_rule_error, ModeSet, SpectralDensity, SUM_RULE_TOL};
