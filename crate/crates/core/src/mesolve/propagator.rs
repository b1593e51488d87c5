use alloc::boxed::Box;

use crate::error::Result;
use crate::exact::{step_count, ExactSnapshot};
use crate::model::ModeSet;
use crate::opalg::ComplexMatrix;
use crate::unfold::CorrelationOp;

use super::lindblad::LindbladPropagator;
use super::method::MethodId;
use super::mll::MllPropagator;
use super::nz2::Nz2Propagator;
use super::problem::{MethodResult, Problem, SolverState};
use super::rate::RateFormPropagator;
use super::ull2::Ull2Propagator;

/// One master equation advanced on the fixed grid of its [`Problem`].
pub trait Propagator: Send {
    fn method(&self) -> MethodId;

    fn problem(&self) -> &Problem;

    fn state(&self) -> &SolverState;

    /// Advances by one `dt`.
    fn step(&mut self) -> Result<()>;

    /// `d rho_S / dt` at the current state, from the method's own equation.
    fn rhs(&self) -> Result<ComplexMatrix>;

    /// The correlation operator the method implies at the current state.
    fn correlation(&self) -> Result<CorrelationOp>;

    /// Bath state entering the mean-field term: `rho_B(0)`, or the co-evolved one.
    fn effective_bath(&self) -> ComplexMatrix {
        self.problem().bath0()
    }

    fn chi_norm(&self) -> Result<f64> {
        Ok(self.correlation()?.hs_norm())
    }

    fn chi_distance(&self, exact: &ExactSnapshot) -> Result<f64> {
        self.correlation()?.hs_distance_to_exact(exact)
    }

    /// `(||chi||, D_HS(chi, chi^EX))` from a single construction of `chi`.
    fn chi_metrics(&self, exact: &ExactSnapshot) -> Result<(f64, f64)> {
        let chi = self.correlation()?;
        Ok((chi.hs_norm(), chi.hs_distance_to_exact(exact)?))
    }
}

pub fn propagator(method: MethodId, problem: &Problem) -> Result<Box<dyn Propagator>> {
    Ok(match method {
        MethodId::Ull2 => Box::new(Ull2Propagator::new(problem.clone())?),
        MethodId::Mll => Box::new(MllPropagator::new(problem.clone())),
        MethodId::Nz2 => Box::new(Nz2Propagator::new(problem.clone())),
        MethodId::Tcl2 | MethodId::Redfield | MethodId::Cr => {
            Box::new(RateFormPropagator::new(method, problem.clone())?)
        }
        MethodId::Lindblad => Box::new(LindbladPropagator::new(problem.clone())?),
    })
}

/// Runs `method` from `t = 0` to `t_final`, recording every step.
pub fn solve(method: MethodId, problem: &Problem, t_final: f64) -> Result<MethodResult> {
    let steps = step_count(problem.dt(), t_final)?;
    let mut p = propagator(method, problem)?;
    let mut out = MethodResult::new(method, problem.dt());
    out.record(p.state())?;
    for _ in 0..steps {
        p.step().map_err(|e| e.with_method(method))?;
        out.record(p.state())?;
    }
    log::debug!("{method}: {steps} steps, min eigenvalue {:.3e}", out.min_eigenvalue);
    Ok(out)
}

fn solve_with(method: MethodId, modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64, b: Option<f64>) -> Result<MethodResult> {
    let problem = match b {
        Some(b) => Problem::with_b_width(modes.clone(), rho_s0.clone(), dt, b)?,
        None => Problem::new(modes.clone(), rho_s0.clone(), dt)?,
    };
    solve(method, &problem, t_final)
}

pub fn solve_ull2(modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64) -> Result<MethodResult> {
    solve_with(MethodId::Ull2, modes, rho_s0, dt, t_final, None)
}

pub fn solve_mll(modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64) -> Result<MethodResult> {
    solve_with(MethodId::Mll, modes, rho_s0, dt, t_final, None)
}

pub fn solve_nz2(modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64) -> Result<MethodResult> {
    solve_with(MethodId::Nz2, modes, rho_s0, dt, t_final, None)
}

pub fn solve_tcl2(modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64) -> Result<MethodResult> {
    solve_with(MethodId::Tcl2, modes, rho_s0, dt, t_final, None)
}

pub fn solve_redfield(modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64, b_width: f64) -> Result<MethodResult> {
    solve_with(MethodId::Redfield, modes, rho_s0, dt, t_final, Some(b_width))
}

pub fn solve_cr(modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64, b_width: f64) -> Result<MethodResult> {
    solve_with(MethodId::Cr, modes, rho_s0, dt, t_final, Some(b_width))
}

pub fn solve_lindblad(modes: &ModeSet, rho_s0: &ComplexMatrix, dt: f64, t_final: f64, b_width: f64) -> Result<MethodResult> {
    solve_with(MethodId::Lindblad, modes, rho_s0, dt, t_final, Some(b_width))
}
