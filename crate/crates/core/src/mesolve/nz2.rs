//! Second-order Nakajima-Zwanzig equation with a running memory integral.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::model::hi_sparse;
use crate::opalg::{sparse_commutator, ComplexMatrix, SparseOp};
use crate::unfold::{chi_from_memory, CorrelationOp};

use super::method::MethodId;
use super::problem::{Problem, SolverState};
use super::propagator::Propagator;

pub(crate) struct Nz2Propagator {
    problem: Problem,
    state: SolverState,
}

impl Nz2Propagator {
    pub(crate) fn new(problem: Problem) -> Self {
        let mut state = SolverState::initial(&problem);
        state.memory = Some(SparseOp::zeros(problem.basis().dim()));
        Self { problem, state }
    }

    fn memory(&self) -> &SparseOp {
        self.state.memory.as_ref().expect("NZ2 state carries its memory")
    }

    /// `[H_I(t), rho (x) rho_B(0)]`
    fn integrand(&self, t: f64, rho: &ComplexMatrix) -> Result<SparseOp> {
        let p = &self.problem;
        let h = hi_sparse(p.modes(), p.basis(), t)?;
        sparse_commutator(&h, &SparseOp::tensor_sb(rho, &p.bath0(), p.basis())?)
    }

    /// `-Tr_B [H_I(t), I]`
    fn force(&self, t: f64, memory: &SparseOp) -> Result<ComplexMatrix> {
        let p = &self.problem;
        let h = hi_sparse(p.modes(), p.basis(), t)?;
        Ok(h.ptrace_bath_commutator_sparse(memory, p.basis())?.scaled(C64::new(-1.0, 0.0)))
    }
}

impl Propagator for Nz2Propagator {
    fn method(&self) -> MethodId {
        MethodId::Nz2
    }

    fn problem(&self) -> &Problem {
        &self.problem
    }

    fn state(&self) -> &SolverState {
        &self.state
    }

    // Heun on rho with the memory advanced by the trapezoid rule at both stages.
    fn step(&mut self) -> Result<()> {
        let (t, h) = (self.state.time, self.problem.dt());
        let half = C64::new(0.5 * h, 0.0);
        let one = C64::new(1.0, 0.0);
        let rho = &self.state.rho_s;
        let memory = self.memory();

        let f0 = self.force(t, memory)?;
        let g0 = self.integrand(t, rho)?;
        let mut rho_p = rho.clone();
        rho_p.axpy(C64::new(h, 0.0), &f0)?;
        let memory_p = memory.combine(one, &g0.add(&self.integrand(t + h, &rho_p)?)?, half)?;

        let mut next = rho.clone();
        next.axpy(half, &(&f0 + &self.force(t + h, &memory_p)?))?;
        let g1 = self.integrand(t + h, &next)?;
        let memory_next = memory.combine(one, &g0.add(&g1)?, half)?;

        self.state.memory = Some(memory_next);
        self.state.advance(next, h).map_err(|e| e.with_method(MethodId::Nz2))
    }

    fn rhs(&self) -> Result<ComplexMatrix> {
        self.force(self.state.time, self.memory())
    }

    fn correlation(&self) -> Result<CorrelationOp> {
        let chi = chi_from_memory(self.memory(), self.problem.basis())?;
        Ok(CorrelationOp::sparse(MethodId::Nz2, self.state.time, chi))
    }
}
