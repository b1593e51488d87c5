//! Lindblad (RWA) equation assembled term by term from the Bohr-frequency
//! decomposition of the coupling, independently of the Redfield code path.

use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::fmath::abs;
use crate::model::{half_line_transform, ModeSet};
use crate::opalg::{hermitian_eigen, qubit, ComplexMatrix, DEFAULT_TOL};
use crate::unfold::{chi_lindblad_set, CorrelationOp};

use super::method::MethodId;
use super::problem::{Problem, SolverState};
use super::propagator::Propagator;
use super::rk4::rk4;

/// Bath coupling operator as its `(k, vac)` and `(vac, k)` columns; every
/// other entry, the vacuum diagonal included, is zero.
struct BathOp {
    up: Vec<C64>,
    down: Vec<C64>,
}

/// One `(omega, i, j)` term: `S = S_i(omega)`, `S' = S_j(-omega)`,
/// `c_fwd = <B_i B~_j>`, `c_bwd = <B~_j B_i>`.
struct Term {
    s: ComplexMatrix,
    s_partner: ComplexMatrix,
    c_fwd: C64,
    c_bwd: C64,
}

/// `S(omega) = sum_{E' - E = omega} P_E S P_E'` for `H_S = omega0 s+ s-`.
pub(crate) fn system_components(omega0: f64, s: &ComplexMatrix) -> Result<Vec<(f64, ComplexMatrix)>> {
    let hs = ComplexMatrix::from_real_diagonal(&[0.0, omega0]);
    let eig = hermitian_eigen(&hs, DEFAULT_TOL)?;
    let projector = |k: usize| {
        let v: Vec<C64> = (0..2).map(|i| eig.vectors[(i, k)]).collect();
        ComplexMatrix::outer(&v, &v)
    };
    let mut out: Vec<(f64, ComplexMatrix)> = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let omega = eig.values[b] - eig.values[a];
            let part = projector(a)?.matmul(s)?.matmul(&projector(b)?)?;
            match out.iter_mut().find(|(w, _)| abs(w - omega) < 1e-12) {
                Some((_, acc)) => *acc += &part,
                None => out.push((omega, part)),
            }
        }
    }
    out.retain(|(_, m)| m.max_abs() > 0.0);
    Ok(out)
}

/// `H_I = sigma_x (x) B_1 + sigma_y (x) B_2` with `b = sum_k g_k |k><vac|`,
/// `B_1 = (b + b^dag)/2`, `B_2 = i (b - b^dag)/2`.
fn coupling(modes: &ModeSet) -> [(ComplexMatrix, BathOp); 2] {
    let g: Vec<C64> = modes.gs().iter().map(|&g| C64::new(0.5 * g, 0.0)).collect();
    let i = C64::new(0.0, 1.0);
    [
        (
            qubit::sigma_x(),
            BathOp {
                up: g.clone(),
                down: g.clone(),
            },
        ),
        (
            qubit::sigma_y(),
            BathOp {
                up: g.iter().map(|x| i * x).collect(),
                down: g.iter().map(|x| -i * x).collect(),
            },
        ),
    ]
}

fn terms(modes: &ModeSet, b_width: f64, t: f64) -> Result<Vec<Term>> {
    let ops = coupling(modes);
    let comps: Vec<Vec<(f64, ComplexMatrix)>> = ops
        .iter()
        .map(|(s, _)| system_components(modes.omega0(), s))
        .collect::<Result<_>>()?;
    let w = modes.omegas();
    let mut out = Vec::new();
    for (i, (_, bi)) in ops.iter().enumerate() {
        for &(omega, ref s_i) in &comps[i] {
            // H_I(omega; t) carries exp(-i omega t) on the system side and
            // exp(+-i omega_k t) on the bath side.
            let s = s_i.scaled(C64::from_polar(1.0, -omega * t));
            for (j, (_, bj)) in ops.iter().enumerate() {
                let Some((_, s_partner)) = comps[j].iter().find(|(w2, _)| abs(w2 + omega) < 1e-12) else {
                    continue;
                };
                // B~_j = int_0^inf e^{i omega (t-s)} B_j(t-s) ds, entrywise.
                let tilde = |x: f64, beta: C64| beta * C64::from_polar(1.0, x * t) * half_line_transform(x, b_width).conj();
                let (mut c_fwd, mut c_bwd) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                for k in 0..w.len() {
                    let bi_down = bi.down[k] * C64::from_polar(1.0, -w[k] * t);
                    let bi_up = bi.up[k] * C64::from_polar(1.0, w[k] * t);
                    c_fwd += bi_down * tilde(omega + w[k], bj.up[k]);
                    c_bwd += tilde(omega - w[k], bj.down[k]) * bi_up;
                }
                out.push(Term {
                    s: s.clone(),
                    s_partner: s_partner.clone(),
                    c_fwd,
                    c_bwd,
                });
            }
        }
    }
    Ok(out)
}

/// `-sum [<B B~>(S S' rho - S' rho S) + <B~ B>(rho S' S - S rho S')]`
fn apply(terms: &[Term], rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(2);
    for t in terms {
        let (s, sp) = (&t.s, &t.s_partner);
        let fwd = &s.matmul(sp)?.matmul(rho)? - &sp.matmul(rho)?.matmul(s)?;
        let bwd = &rho.matmul(sp)?.matmul(s)? - &s.matmul(rho)?.matmul(sp)?;
        out.axpy(-t.c_fwd, &fwd)?;
        out.axpy(-t.c_bwd, &bwd)?;
    }
    Ok(out)
}

/// Lindblad right-hand side at time `t`. The mean-field term vanishes because
/// every bath operator has zero vacuum expectation.
pub fn lindblad_generator(modes: &ModeSet, b_width: f64, t: f64, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    apply(&terms(modes, b_width, t)?, rho)
}

pub(crate) struct LindbladPropagator {
    problem: Problem,
    state: SolverState,
    // The RWA generator is stationary; built once at t = 0.
    terms: Vec<Term>,
}

impl LindbladPropagator {
    pub(crate) fn new(problem: Problem) -> Result<Self> {
        Ok(Self {
            terms: terms(problem.modes(), problem.b_width(), 0.0)?,
            state: SolverState::initial(&problem),
            problem,
        })
    }
}

impl Propagator for LindbladPropagator {
    fn method(&self) -> MethodId {
        MethodId::Lindblad
    }

    fn problem(&self) -> &Problem {
        &self.problem
    }

    fn state(&self) -> &SolverState {
        &self.state
    }

    fn step(&mut self) -> Result<()> {
        let dt = self.problem.dt();
        let next = rk4(self.state.time, &self.state.rho_s, dt, |_, r| apply(&self.terms, r))?;
        self.state.advance(next, dt).map_err(|e| e.with_method(MethodId::Lindblad))
    }

    fn rhs(&self) -> Result<ComplexMatrix> {
        apply(&self.terms, &self.state.rho_s)
    }

    fn correlation(&self) -> Result<CorrelationOp> {
        let (p, s) = (&self.problem, &self.state);
        chi_lindblad_set(&s.rho_s, p.modes(), p.basis(), s.time, p.b_width())
    }
}
