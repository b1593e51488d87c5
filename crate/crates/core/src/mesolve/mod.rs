//! Fixed-step integrators of the seven approximate master equations, all in
//! the interaction picture.

mod lindblad;
mod method;
mod mll;
mod nz2;
mod problem;
mod propagator;
mod rate;
mod rk4;
mod ull2;

pub use lindblad::lindblad_generator;
pub use method::{MethodId, UnknownMethod};
pub use problem::{
    MethodResult, Problem, SolverState, CHI_HERMITICITY_GUARD, NEGATIVE_POPULATION_TOL, TRACE_GUARD,
};
pub use propagator::{
    propagator, solve, solve_cr, solve_lindblad, solve_mll, solve_nz2, solve_redfield, solve_tcl2,
    solve_ull2, Propagator,
};
pub use rate::rate_generator;
