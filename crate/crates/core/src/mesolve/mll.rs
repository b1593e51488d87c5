//! Markovian Lindblad-like equation: `chi ~ -i t [H~_I(t), rho_S(t) (x) rho_B(0)]`.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::model::{bath_mean_field, h_tilde, hi_sparse, system_mean_field};
use crate::opalg::{commutator, sparse_commutator, ComplexMatrix, SparseOp};
use crate::unfold::{chi_mll, CorrelationOp};

use super::method::MethodId;
use super::problem::{Problem, SolverState};
use super::propagator::Propagator;
use super::rk4::rk4;

pub(crate) struct MllPropagator {
    problem: Problem,
    state: SolverState,
    bath0: ComplexMatrix,
}

impl MllPropagator {
    pub(crate) fn new(problem: Problem) -> Self {
        Self {
            state: SolverState::initial(&problem),
            bath0: problem.bath0(),
            problem,
        }
    }

    /// `-i [X, rho] - t Tr_B [H_I, [H~_I, rho (x) rho_B(0)]]`
    fn rhs_at(&self, t: f64, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let basis = self.problem.basis();
        let h = hi_sparse(self.problem.modes(), basis, t)?;
        let x = system_mean_field(&h, &self.bath0, basis)?;
        let y = bath_mean_field(&h, rho, basis)?;
        let ht = h_tilde(&h, &x, &y, basis)?;
        let c = sparse_commutator(&ht, &SparseOp::tensor_sb(rho, &self.bath0, basis)?)?;
        let mut out = commutator(&x, rho)?.scaled(C64::new(0.0, -1.0));
        out.axpy(C64::new(-t, 0.0), &h.ptrace_bath_commutator_sparse(&c, basis)?)?;
        Ok(out)
    }
}

impl Propagator for MllPropagator {
    fn method(&self) -> MethodId {
        MethodId::Mll
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
        self.state.advance(next, dt).map_err(|e| e.with_method(MethodId::Mll))
    }

    fn rhs(&self) -> Result<ComplexMatrix> {
        self.rhs_at(self.state.time, &self.state.rho_s)
    }

    fn correlation(&self) -> Result<CorrelationOp> {
        let (p, s) = (&self.problem, &self.state);
        chi_mll(&s.rho_s, &self.bath0, p.modes(), p.basis(), s.time)
    }
}
