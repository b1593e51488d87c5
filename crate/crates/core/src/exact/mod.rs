//! Exact reference dynamics in the single-excitation sector.

mod evolve;
mod snapshot;

pub use evolve::{evolve_exact, step_count, ExactScheme, PureState, NORM_GUARD};
pub use snapshot::{reduced_and_chi, ExactSnapshot, ReducedState};
