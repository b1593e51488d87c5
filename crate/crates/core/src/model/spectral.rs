use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{exp, sqrt, PI};

/// Relative mismatch between `sum_k g_k^2` and `int_0^{M dw} J` that triggers a warning.
pub const SUM_RULE_TOL: f64 = 0.02;

#[derive(Clone, Copy, Debug)]
pub enum SpectralDensity {
    /// `J(w) = (eta w / pi) exp(-w / w_c)`
    Ohmic { eta: f64, omega_c: f64 },
    /// `J(w) = Gamma lambda^2 / (2 pi (w^2 + lambda^2))`
    Lorentzian { gamma: f64, lambda: f64 },
    /// Arbitrary density, mostly for tests.
    Custom(fn(f64) -> f64),
}

impl SpectralDensity {
    pub fn ohmic(eta: f64, omega_c: f64) -> Result<Self> {
        let j = SpectralDensity::Ohmic { eta, omega_c };
        j.validate()?;
        Ok(j)
    }

    pub fn lorentzian(gamma: f64, lambda: f64) -> Result<Self> {
        let j = SpectralDensity::Lorentzian { gamma, lambda };
        j.validate()?;
        Ok(j)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        match *self {
            SpectralDensity::Ohmic { eta, omega_c } => {
                if !positive(eta) {
                    return Err(Error::param("eta", "must be positive and finite"));
                }
                if !positive(omega_c) {
                    return Err(Error::param("omega_c", "must be positive and finite"));
                }
            }
            SpectralDensity::Lorentzian { gamma, lambda } => {
                if !positive(gamma) {
                    return Err(Error::param("gamma", "must be positive and finite"));
                }
                if !positive(lambda) {
                    return Err(Error::param("lambda", "must be positive and finite"));
                }
            }
            SpectralDensity::Custom(_) => {}
        }
        Ok(())
    }

    pub fn eval(&self, w: f64) -> f64 {
        match *self {
            SpectralDensity::Ohmic { eta, omega_c } => eta * w / PI * exp(-w / omega_c),
            SpectralDensity::Lorentzian { gamma, lambda } => {
                gamma * lambda * lambda / (2.0 * PI * (w * w + lambda * lambda))
            }
            SpectralDensity::Custom(f) => f(w),
        }
    }

    /// Composite Simpson rule for `int_a^b J`.
    pub fn integrate(&self, a: f64, b: f64, panels: usize) -> f64 {
        let n = panels.max(1) * 2;
        let h = (b - a) / n as f64;
        let mut s = self.eval(a) + self.eval(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * self.eval(a + i as f64 * h);
        }
        s * h / 3.0
    }
}

/// Discretized bath: `omega_k = k dw` for `k = 1..M` with couplings `g_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeSet {
    omega0: f64,
    delta_omega: f64,
    omegas: Vec<f64>,
    gs: Vec<f64>,
}

impl ModeSet {
    /// Arbitrary frequencies and couplings; `delta_omega` is kept as the
    /// default delta-function width.
    pub fn from_parts(omega0: f64, delta_omega: f64, omegas: Vec<f64>, gs: Vec<f64>) -> Result<Self> {
        if omegas.is_empty() {
            return Err(Error::param("M", "need at least one bath mode"));
        }
        if omegas.len() != gs.len() {
            return Err(Error::dim("ModeSet::from_parts", omegas.len(), gs.len()));
        }
        if !(omega0.is_finite()) {
            return Err(Error::param("omega0", "must be finite"));
        }
        if !(delta_omega.is_finite() && delta_omega > 0.0) {
            return Err(Error::param("delta_omega", "must be positive and finite"));
        }
        if omegas.iter().chain(&gs).any(|x| !x.is_finite()) {
            return Err(Error::param("modes", "frequencies and couplings must be finite"));
        }
        Ok(Self {
            omega0,
            delta_omega,
            omegas,
            gs,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    #[inline]
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    #[inline]
    pub fn delta_omega(&self) -> f64 {
        self.delta_omega
    }

    #[inline]
    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    #[inline]
    pub fn gs(&self) -> &[f64] {
        &self.gs
    }

    /// `omega0 - omega_k` for the zero-based mode index `k`.
    #[inline]
    pub fn detuning(&self, k: usize) -> f64 {
        self.omega0 - self.omegas[k]
    }

    /// `sum_k g_k^2 = L(0)`
    pub fn coupling_sum(&self) -> f64 {
        self.gs.iter().map(|g| g * g).sum()
    }

    /// Same modes with every coupling multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            gs: self.gs.iter().map(|g| g * factor).collect(),
            ..self.clone()
        }
    }
}

/// `omega_k = k dw`, `g_k = sqrt(J(omega_k) dw)`.
///
/// Logs a warning when `sum g_k^2` misses `int_0^{M dw} J` by more than
/// [`SUM_RULE_TOL`]; that is not an error.
pub fn discretize(j: &SpectralDensity, modes: usize, delta_omega: f64, omega0: f64) -> Result<ModeSet> {
    j.validate()?;
    if modes == 0 {
        return Err(Error::param("M", "need at least one bath mode"));
    }
    if !(delta_omega.is_finite() && delta_omega > 0.0) {
        return Err(Error::param("delta_omega", "must be positive and finite"));
    }
    if !(omega0.is_finite() && omega0 > 0.0) {
        return Err(Error::param("omega0", "must be positive and finite"));
    }
    let omegas: Vec<f64> = (1..=modes).map(|k| k as f64 * delta_omega).collect();
    let gs = omegas
        .iter()
        .map(|&w| {
            let jw = j.eval(w);
            if jw < 0.0 {
                Err(Error::param("J", "spectral density must be non-negative"))
            } else {
                Ok(sqrt(jw * delta_omega))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let set = ModeSet::from_parts(omega0, delta_omega, omegas, gs)?;
    if let Some(err) = sum_rule_error(j, &set) {
        if err > SUM_RULE_TOL {
            log::warn!(
                "discretized coupling sum misses the integral of J by {:.2}% (M = {modes}, dw = {delta_omega})",
                100.0 * err
            );
        }
    }
    Ok(set)
}

/// Relative gap `|sum g^2 - int_0^{M dw} J| / int J`, or `None` when the integral vanishes.
pub fn sum_rule_error(j: &SpectralDensity, modes: &ModeSet) -> Option<f64> {
    let w_max = modes.len() as f64 * modes.delta_omega();
    let integral = j.integrate(0.0, w_max, 20 * modes.len().max(50));
    if integral.abs() < f64::MIN_POSITIVE {
        return None;
    }
    Some((modes.coupling_sum() - integral).abs() / integral.abs())
}
