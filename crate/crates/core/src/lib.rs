//! Correlation unfolding for a qubit coupled to a bath of two-level systems.
//!
//! The crate simulates the model exactly in the single-excitation sector,
//! integrates the usual second-order master equations (ULL2, MLL, NZ2, TCL2,
//! Redfield, corrected Redfield, Lindblad) and rebuilds, for each of them, the
//! system-bath correlation operator `chi = rho_SB - rho_S (x) rho_B` that the
//! equation implicitly assumes.
//!
//! All operators live in the truncated product basis
//! `{|s, b>}` with `s in {0, 1}` and `b in {vac, e_1, .., e_M}`
//! (see [`opalg::TruncatedBasis`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exact;
pub mod mesolve;
pub mod model;
pub mod opalg;
pub mod unfold;

mod fmath;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
