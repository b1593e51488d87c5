use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::abs;
use crate::model::ModeSet;
use crate::opalg::{min_eigenvalue, ComplexMatrix, SparseOp, TruncatedBasis};
use crate::unfold::vacuum_bath;

use super::method::MethodId;

/// `|Tr rho_S - 1|` beyond this aborts a run.
pub const TRACE_GUARD: f64 = 1e-6;
/// `max |chi - chi^dag|` beyond this aborts a run carrying a dense correlation.
pub const CHI_HERMITICITY_GUARD: f64 = 1e-8;
/// A smallest eigenvalue of `rho_S` below `-NEGATIVE_POPULATION_TOL` raises the
/// negative-population flag. Runs are never aborted for it.
pub const NEGATIVE_POPULATION_TOL: f64 = 1e-6;

/// Shared inputs of every propagator. The bath always starts in the vacuum.
#[derive(Clone, Debug)]
pub struct Problem {
    modes: ModeSet,
    basis: TruncatedBasis,
    rho_s0: ComplexMatrix,
    dt: f64,
    b_width: f64,
}

impl Problem {
    /// Uses the mode spacing as the delta-function width.
    pub fn new(modes: ModeSet, rho_s0: ComplexMatrix, dt: f64) -> Result<Self> {
        let b = modes.delta_omega();
        Self::with_b_width(modes, rho_s0, dt, b)
    }

    pub fn with_b_width(modes: ModeSet, rho_s0: ComplexMatrix, dt: f64, b_width: f64) -> Result<Self> {
        check_density(&rho_s0)?;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::param("dt", "must be positive and finite"));
        }
        if !(b_width.is_finite() && b_width > 0.0) {
            return Err(Error::param("b_width", "must be positive and finite"));
        }
        let basis = TruncatedBasis::new(modes.len())?;
        Ok(Self {
            modes,
            basis,
            rho_s0,
            dt,
            b_width,
        })
    }

    #[inline]
    pub fn modes(&self) -> &ModeSet {
        &self.modes
    }

    #[inline]
    pub fn basis(&self) -> &TruncatedBasis {
        &self.basis
    }

    #[inline]
    pub fn rho_s0(&self) -> &ComplexMatrix {
        &self.rho_s0
    }

    #[inline]
    pub fn dt(&self) -> f64 {
        self.dt
    }

    #[inline]
    pub fn b_width(&self) -> f64 {
        self.b_width
    }

    /// `rho_B(0) = |vac><vac|`
    pub fn bath0(&self) -> ComplexMatrix {
        vacuum_bath(&self.basis)
    }
}

fn check_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() != 2 {
        return Err(Error::dim("rho_S0", 2, rho.dim()));
    }
    if !rho.is_finite() || rho.hermitian_deviation() > 1e-12 {
        return Err(Error::param("rho_S0", "must be Hermitian"));
    }
    if abs(rho.trace().re - 1.0) > 1e-10 {
        return Err(Error::param("rho_S0", "must have unit trace"));
    }
    if min_eigenvalue(rho)? < -1e-10 {
        return Err(Error::param("rho_S0", "must be positive semidefinite"));
    }
    Ok(())
}

/// Mutable state of one propagator.
#[derive(Clone, Debug)]
pub struct SolverState {
    pub time: f64,
    pub step: usize,
    pub rho_s: ComplexMatrix,
    pub rho_s0: ComplexMatrix,
    /// Co-evolved bath state (ULL2).
    pub rho_b: Option<ComplexMatrix>,
    /// Accumulated dense correlation (ULL2).
    pub chi: Option<ComplexMatrix>,
    /// Running memory integral `int_0^t [H_I(s), rho_S(s) (x) rho_B(0)] ds` (NZ2).
    pub memory: Option<SparseOp>,
}

impl SolverState {
    pub(crate) fn initial(problem: &Problem) -> Self {
        Self {
            time: 0.0,
            step: 0,
            rho_s: problem.rho_s0.clone(),
            rho_s0: problem.rho_s0.clone(),
            rho_b: None,
            chi: None,
            memory: None,
        }
    }

    /// Moves to the next grid point and applies the trace guard.
    pub(crate) fn advance(&mut self, rho_s: ComplexMatrix, dt: f64) -> Result<()> {
        self.step += 1;
        self.time = self.step as f64 * dt;
        self.rho_s = rho_s.hermitian_part();
        let drift = abs(self.rho_s.trace().re - 1.0);
        if !(drift <= TRACE_GUARD) {
            return Err(Error::NumericalInstability {
                method: None,
                quantity: "trace",
                value: drift,
                time: self.time,
            });
        }
        Ok(())
    }
}

/// Sampled `rho_S` of one method on the uniform grid `t_i = i dt`.
#[derive(Clone, Debug)]
pub struct MethodResult {
    pub method: MethodId,
    pub dt: f64,
    pub times: Vec<f64>,
    pub rho_s: Vec<ComplexMatrix>,
    /// Smallest eigenvalue of `rho_S` seen over the run.
    pub min_eigenvalue: f64,
    pub negative_population: bool,
}

impl MethodResult {
    pub fn new(method: MethodId, dt: f64) -> Self {
        Self {
            method,
            dt,
            times: Vec::new(),
            rho_s: Vec::new(),
            min_eigenvalue: f64::INFINITY,
            negative_population: false,
        }
    }

    pub fn record(&mut self, state: &SolverState) -> Result<()> {
        let e = min_eigenvalue(&state.rho_s)?;
        self.min_eigenvalue = self.min_eigenvalue.min(e);
        self.negative_population |= e < -NEGATIVE_POPULATION_TOL;
        self.times.push(state.time);
        self.rho_s.push(state.rho_s.clone());
        Ok(())
    }

    pub fn final_state(&self) -> Option<&ComplexMatrix> {
        self.rho_s.last()
    }
}
