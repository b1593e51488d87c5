use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fmath::{abs, cos, exp, sin, sqrt, PI};
use crate::opalg::{ComplexMatrix, SparseOp, TruncatedBasis};

use super::interaction::mode_sum_op;
use super::spectral::ModeSet;

/// Modes with `|omega0 - omega_k|` below this are treated as exactly resonant.
pub const RESONANCE_TOL: f64 = 1e-12;

/// Decay rate and frequency shift of the rate-form qubit equation
/// `d rho/dt = -i eps [n, rho] + gamma (2 s- rho s+ - {n, rho})`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RatePair {
    pub gamma: f64,
    pub epsilon: f64,
}

impl RatePair {
    pub fn new(gamma: f64, epsilon: f64) -> Self {
        Self { gamma, epsilon }
    }

    fn from_complex(z: C64) -> Self {
        Self::new(z.re, z.im)
    }
}

#[inline]
pub(crate) fn is_resonant(detuning: f64) -> bool {
    abs(detuning) < RESONANCE_TOL
}

/// Gaussian mollifier `exp(-x^2/b^2) / (b sqrt(pi))`.
#[inline]
pub fn gaussian_delta(x: f64, b: f64) -> f64 {
    exp(-(x * x) / (b * b)) / (b * sqrt(PI))
}

fn check_width(b_width: f64) -> Result<()> {
    if b_width.is_finite() && b_width > 0.0 {
        Ok(())
    } else {
        Err(Error::param("b_width", "must be positive and finite"))
    }
}

/// `L(u) = sum_k g_k^2 exp(i (omega0 - omega_k) u)`
pub fn kernel_l(modes: &ModeSet, u: f64) -> C64 {
    modes
        .gs()
        .iter()
        .enumerate()
        .map(|(k, g)| g * g * C64::from_polar(1.0, modes.detuning(k) * u))
        .sum()
}

/// `phi_k(t) = int_0^t exp(-i (omega0 - omega_k) s) ds`; equals `t` on resonance.
pub fn phi(modes: &ModeSet, k: usize, t: f64) -> C64 {
    phi_detuned(modes.detuning(k), t)
}

pub(crate) fn phi_detuned(d: f64, t: f64) -> C64 {
    if is_resonant(d) {
        return C64::new(t, 0.0);
    }
    // (1 - e^{-i d t}) / (i d) = e^{-i d t / 2} * 2 sin(d t / 2) / d
    C64::from_polar(2.0 * sin(0.5 * d * t) / d, -0.5 * d * t)
}

/// `sin(d t) / d` with the resonant limit `t`.
fn sin_over(d: f64, t: f64) -> f64 {
    if is_resonant(d) {
        t
    } else {
        sin(d * t) / d
    }
}

/// `(1 - cos(d t)) / d` with the resonant limit `0`.
fn one_minus_cos_over(d: f64, t: f64) -> f64 {
    if is_resonant(d) {
        0.0
    } else {
        let h = sin(0.5 * d * t);
        2.0 * h * h / d
    }
}

/// `int_0^inf exp(i d s) ds = pi delta(d) + i P/d`, regularized.
pub(crate) fn half_line_transform(d: f64, b_width: f64) -> C64 {
    let pv = if is_resonant(d) { 0.0 } else { 1.0 / d };
    C64::new(PI * gaussian_delta(d, b_width), pv)
}

/// Markovian rates: `gamma = sum g^2 pi delta_b(D_k)`, `eps = P sum g^2 / D_k`.
pub fn redfield_rates(modes: &ModeSet, b_width: f64) -> Result<RatePair> {
    check_width(b_width)?;
    Ok(RatePair::from_complex(
        (0..modes.len())
            .map(|k| modes.gs()[k] * modes.gs()[k] * half_line_transform(modes.detuning(k), b_width))
            .sum(),
    ))
}

/// Time-local second-order rates, `int_0^t L(u) du`.
pub fn tcl2_rates(modes: &ModeSet, t: f64) -> RatePair {
    let mut r = RatePair::default();
    for (k, g) in modes.gs().iter().enumerate() {
        let d = modes.detuning(k);
        r.gamma += g * g * sin_over(d, t);
        r.epsilon += g * g * one_minus_cos_over(d, t);
    }
    r
}

/// Rates of the corrected-Redfield counter term,
/// `sum_k g_k^2 e^{i D_k t} (pi delta_b(D_k) + i P/D_k)`.
///
/// Equals [`redfield_rates`] at `t = 0`. Written with the same regularization
/// as [`redfield_k`], so that the counter term is exactly the one generated by
/// the initial Redfield correlation.
pub fn cr_rates(modes: &ModeSet, t: f64, b_width: f64) -> Result<RatePair> {
    check_width(b_width)?;
    Ok(RatePair::from_complex(
        (0..modes.len())
            .map(|k| {
                let d = modes.detuning(k);
                let g2 = modes.gs()[k] * modes.gs()[k];
                g2 * C64::from_polar(1.0, d * t) * half_line_transform(d, b_width)
            })
            .sum(),
    ))
}

/// `sum_k g_k^2 (sin(D_k t)/D_k, cos(D_k t)/D_k)` with resonant modes contributing
/// `(t, 0)`. The oscillatory part of the continuum corrected-Redfield rates.
pub fn cr_sine_cosine_sums(modes: &ModeSet, t: f64) -> RatePair {
    let mut r = RatePair::default();
    for (k, g) in modes.gs().iter().enumerate() {
        let d = modes.detuning(k);
        r.gamma += g * g * sin_over(d, t);
        if !is_resonant(d) {
            r.epsilon += g * g * cos(d * t) / d;
        }
    }
    r
}

/// `K(t) = int_0^inf H_I(t - s) ds`, sparse.
pub fn redfield_k_sparse(modes: &ModeSet, basis: &TruncatedBasis, t: f64, b_width: f64) -> Result<SparseOp> {
    check_width(b_width)?;
    mode_sum_op(modes, basis, |k| {
        let d = modes.detuning(k);
        C64::from_polar(1.0, -d * t) * half_line_transform(d, b_width)
    })
}

pub fn redfield_k(modes: &ModeSet, basis: &TruncatedBasis, t: f64, b_width: f64) -> Result<ComplexMatrix> {
    Ok(redfield_k_sparse(modes, basis, t, b_width)?.to_dense())
}

/// `int_0^t H_I(s) ds`, sparse.
pub fn tcl2_k_sparse(modes: &ModeSet, basis: &TruncatedBasis, t: f64) -> Result<SparseOp> {
    mode_sum_op(modes, basis, |k| phi(modes, k, t))
}
