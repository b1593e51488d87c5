use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fmath::{abs, sqrt};
use crate::model::ModeSet;
use crate::opalg::{hermitian_eigen, ComplexMatrix, TruncatedBasis, DEFAULT_TOL};

/// Allowed drift of `||psi||` before evolution aborts.
pub const NORM_GUARD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExactScheme {
    /// Fixed-step classical Runge-Kutta on the amplitude vector.
    Rk4,
    /// Exact phases from a Jacobi diagonalization of the one-excitation block.
    #[default]
    Eigenprop,
}

/// Total-system pure state with at most one excitation, in the Schrodinger picture.
///
/// Amplitude order: `|0, vac>`, `|1, vac>`, `|0, e_1>`, ..., `|0, e_M>`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    pub amplitudes: Vec<C64>,
    pub time: f64,
}

impl PureState {
    /// `(a |0> + b |1>) (x) |vac>`; must be normalized.
    pub fn product(a: C64, b: C64, modes: usize) -> Result<Self> {
        let mut amplitudes = vec![C64::new(0.0, 0.0); modes + 2];
        amplitudes[0] = a;
        amplitudes[1] = b;
        let s = Self { amplitudes, time: 0.0 };
        s.check_normalized()?;
        Ok(s)
    }

    /// `(|0> + |1>)/sqrt(2) (x) |vac>`
    pub fn plus(modes: usize) -> Self {
        let h = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::product(h, h, modes).expect("normalized by construction")
    }

    /// Any normalized amplitude vector of length `M + 2`.
    pub fn from_amplitudes(amplitudes: Vec<C64>, time: f64) -> Result<Self> {
        if amplitudes.len() < 3 {
            return Err(Error::param("amplitudes", "need at least one bath mode"));
        }
        let s = Self { amplitudes, time };
        s.check_normalized()?;
        Ok(s)
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.amplitudes.len() - 2
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.amplitudes.iter().map(|z| z.norm_sqr()).sum())
    }

    /// `<N>` with `N = sigma_+ sigma_- + sum_k Sigma_+^k Sigma_-^k`.
    pub fn excitation_number(&self) -> f64 {
        self.amplitudes[1..].iter().map(|z| z.norm_sqr()).sum()
    }

    /// Amplitudes in the flat index of `basis` (zero on `|1, e_k>`).
    pub fn to_basis_vector(&self, basis: &TruncatedBasis) -> Result<Vec<C64>> {
        if basis.modes() != self.modes() {
            return Err(Error::dim("PureState::to_basis_vector", basis.modes(), self.modes()));
        }
        let mut v = vec![C64::new(0.0, 0.0); basis.dim()];
        v[basis.index(0, 0)] = self.amplitudes[0];
        v[basis.index(1, 0)] = self.amplitudes[1];
        for k in 1..=self.modes() {
            v[basis.index(0, k)] = self.amplitudes[k + 1];
        }
        Ok(v)
    }

    fn check_normalized(&self) -> Result<()> {
        if abs(self.norm() - 1.0) > 1e-9 {
            Err(Error::param("psi0", "state must be normalized"))
        } else {
            Ok(())
        }
    }

    fn check_norm_drift(&self) -> Result<()> {
        let n = self.norm();
        if !n.is_finite() || abs(n - 1.0) > NORM_GUARD {
            Err(Error::NumericalInstability {
                method: None,
                quantity: "norm",
                value: n,
                time: self.time,
            })
        } else {
            Ok(())
        }
    }
}

/// `H psi` for the arrow-shaped one-excitation Hamiltonian.
fn apply_h(modes: &ModeSet, psi: &[C64], out: &mut [C64]) {
    let c = psi[1];
    out[0] = C64::new(0.0, 0.0);
    let mut acc = modes.omega0() * c;
    for (k, (&w, &g)) in modes.omegas().iter().zip(modes.gs()).enumerate() {
        let d = psi[k + 2];
        acc += g * d;
        out[k + 2] = w * d + g * c;
    }
    out[1] = acc;
}

/// Schrodinger-picture trajectory `psi(i dt)`, `i = 0..=round(t_final/dt)`.
pub fn evolve_exact(
    modes: &ModeSet,
    psi0: &PureState,
    dt: f64,
    t_final: f64,
    scheme: ExactScheme,
) -> Result<Vec<PureState>> {
    if psi0.modes() != modes.len() {
        return Err(Error::dim("evolve_exact", modes.len(), psi0.modes()));
    }
    psi0.check_normalized()?;
    let steps = step_count(dt, t_final)?;
    let t0 = psi0.time;
    match scheme {
        ExactScheme::Rk4 => evolve_rk4(modes, psi0, dt, steps, t0),
        ExactScheme::Eigenprop => evolve_eigen(modes, psi0, dt, steps, t0),
    }
}

/// Number of `dt` steps to `t_final` (rounded).
pub fn step_count(dt: f64, t_final: f64) -> Result<usize> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::param("dt", "must be positive and finite"));
    }
    if !(t_final.is_finite() && t_final >= dt) {
        return Err(Error::param("t_final", "must be finite and at least dt"));
    }
    Ok((t_final / dt + 0.5) as usize)
}

fn evolve_rk4(modes: &ModeSet, psi0: &PureState, dt: f64, steps: usize, t0: f64) -> Result<Vec<PureState>> {
    let n = psi0.amplitudes.len();
    let mi = C64::new(0.0, -1.0);
    let mut out = Vec::with_capacity(steps + 1);
    let mut psi = psi0.amplitudes.clone();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![C64::default(); n], vec![C64::default(); n], vec![C64::default(); n], vec![C64::default(); n], vec![C64::default(); n]);
    out.push(PureState {
        amplitudes: psi.clone(),
        time: t0,
    });
    for step in 1..=steps {
        apply_h(modes, &psi, &mut k1);
        k1.iter_mut().for_each(|z| *z *= mi);
        for i in 0..n {
            tmp[i] = psi[i] + 0.5 * dt * k1[i];
        }
        apply_h(modes, &tmp, &mut k2);
        k2.iter_mut().for_each(|z| *z *= mi);
        for i in 0..n {
            tmp[i] = psi[i] + 0.5 * dt * k2[i];
        }
        apply_h(modes, &tmp, &mut k3);
        k3.iter_mut().for_each(|z| *z *= mi);
        for i in 0..n {
            tmp[i] = psi[i] + dt * k3[i];
        }
        apply_h(modes, &tmp, &mut k4);
        k4.iter_mut().for_each(|z| *z *= mi);
        for i in 0..n {
            psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let state = PureState {
            amplitudes: psi.clone(),
            time: t0 + step as f64 * dt,
        };
        state.check_norm_drift()?;
        out.push(state);
    }
    Ok(out)
}

fn evolve_eigen(modes: &ModeSet, psi0: &PureState, dt: f64, steps: usize, t0: f64) -> Result<Vec<PureState>> {
    let m = modes.len();
    // One-excitation block on |1, vac>, |0, e_k>.
    let mut h = ComplexMatrix::zeros(m + 1);
    h[(0, 0)] = C64::new(modes.omega0(), 0.0);
    for k in 0..m {
        let g = C64::new(modes.gs()[k], 0.0);
        h[(0, k + 1)] = g;
        h[(k + 1, 0)] = g;
        h[(k + 1, k + 1)] = C64::new(modes.omegas()[k], 0.0);
    }
    let eig = hermitian_eigen(&h, DEFAULT_TOL)?;
    let v = &eig.vectors;
    let block0 = &psi0.amplitudes[1..];
    // w = V^dag c(0)
    let w: Vec<C64> = (0..=m)
        .map(|j| (0..=m).map(|i| v[(i, j)].conj() * block0[i]).sum())
        .collect();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(psi0.clone());
    let mut phased = vec![C64::default(); m + 1];
    for step in 1..=steps {
        let t = step as f64 * dt;
        for j in 0..=m {
            phased[j] = w[j] * C64::from_polar(1.0, -eig.values[j] * t);
        }
        let mut amplitudes = Vec::with_capacity(m + 2);
        amplitudes.push(psi0.amplitudes[0]);
        for i in 0..=m {
            amplitudes.push(v.row(i).iter().zip(&phased).map(|(a, b)| a * b).sum());
        }
        let state = PureState {
            amplitudes,
            time: t0 + t,
        };
        state.check_norm_drift()?;
        out.push(state);
    }
    Ok(out)
}
