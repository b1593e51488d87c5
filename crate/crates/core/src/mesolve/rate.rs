//! TCL2, Redfield and corrected Redfield as 2x2 rate equations.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::{cr_rates, redfield_rates, tcl2_rates, RatePair};
use crate::opalg::ComplexMatrix;
use crate::unfold::{chi_cr, chi_redfield, chi_tcl2, CorrelationOp};

use super::method::MethodId;
use super::problem::{Problem, SolverState};
use super::propagator::Propagator;
use super::rk4::rk4;

/// `-i eps [s+ s-, rho] + gamma (2 s- rho s+ - {s+ s-, rho})` written out entrywise.
pub fn rate_generator(r: RatePair, rho: &ComplexMatrix) -> ComplexMatrix {
    let (g, e) = (r.gamma, r.epsilon);
    let p11 = rho[(1, 1)];
    ComplexMatrix::from_rows([
        [p11 * (2.0 * g), C64::new(-g, e) * rho[(0, 1)]],
        [C64::new(-g, -e) * rho[(1, 0)], p11 * (-2.0 * g)],
    ])
}

pub(crate) struct RateFormPropagator {
    method: MethodId,
    problem: Problem,
    state: SolverState,
    redfield: RatePair,
}

impl RateFormPropagator {
    pub(crate) fn new(method: MethodId, problem: Problem) -> Result<Self> {
        if !matches!(method, MethodId::Tcl2 | MethodId::Redfield | MethodId::Cr) {
            return Err(Error::param("method", "not a rate-form equation"));
        }
        let redfield = redfield_rates(problem.modes(), problem.b_width())?;
        Ok(Self {
            method,
            state: SolverState::initial(&problem),
            problem,
            redfield,
        })
    }

    fn rhs_at(&self, t: f64, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let modes = self.problem.modes();
        Ok(match self.method {
            MethodId::Tcl2 => rate_generator(tcl2_rates(modes, t), rho),
            MethodId::Redfield => rate_generator(self.redfield, rho),
            _ => {
                // L_R[rho(t)] - L^c(t)[rho(0)]
                let counter = cr_rates(modes, t, self.problem.b_width())?;
                &rate_generator(self.redfield, rho) - &rate_generator(counter, &self.state.rho_s0)
            }
        })
    }
}

impl Propagator for RateFormPropagator {
    fn method(&self) -> MethodId {
        self.method
    }

    fn problem(&self) -> &Problem {
        &self.problem
    }

    fn state(&self) -> &SolverState {
        &self.state
    }

    fn step(&mut self) -> Result<()> {
        let dt = self.problem.dt();
        let next = rk4(self.state.time, &self.state.rho_s, dt, |t, r| self.rhs_at(t, r))?;
        self.state.advance(next, dt).map_err(|e| e.with_method(self.method))
    }

    fn rhs(&self) -> Result<ComplexMatrix> {
        self.rhs_at(self.state.time, &self.state.rho_s)
    }

    fn correlation(&self) -> Result<CorrelationOp> {
        let (p, s) = (&self.problem, &self.state);
        match self.method {
            MethodId::Tcl2 => chi_tcl2(&s.rho_s, p.modes(), p.basis(), s.time),
            MethodId::Redfield => chi_redfield(&s.rho_s, p.modes(), p.basis(), s.time, p.b_width()),
            _ => chi_cr(&s.rho_s, &s.rho_s0, p.modes(), p.basis(), s.time, p.b_width()),
        }
    }
}
