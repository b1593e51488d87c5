//! Second-order universal Lindblad-like equation: `rho_S`, `rho_B` and a dense
//! `chi` advanced together.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::exact::ExactSnapshot;
use crate::model::{bath_mean_field, hi_sparse, system_mean_field};
use crate::opalg::{commutator, ComplexMatrix, SparseOp, TruncatedBasis};
use crate::unfold::CorrelationOp;

use super::method::MethodId;
use super::problem::{Problem, SolverState, CHI_HERMITICITY_GUARD};
use super::propagator::Propagator;
use super::rk4::Rk4State;

const MINUS_I: C64 = C64::new(0.0, -1.0);

#[derive(Clone)]
struct Joint {
    rho: ComplexMatrix,
    rho_b: ComplexMatrix,
    chi: ComplexMatrix,
}

impl Joint {
    fn zeros(nb: usize) -> Self {
        Self {
            rho: ComplexMatrix::zeros(2),
            rho_b: ComplexMatrix::zeros(nb),
            chi: ComplexMatrix::zeros(2 * nb),
        }
    }

    fn add_scaled(&mut self, a: f64, other: &Self) {
        self.rho.add_scaled(a, &other.rho);
        self.rho_b.add_scaled(a, &other.rho_b);
        self.chi.add_scaled(a, &other.chi);
    }

    /// `self = y + a d`
    fn set_sum(&mut self, y: &Self, a: f64, d: &Self) {
        for (dst, (src, dd)) in [
            (&mut self.rho, (&y.rho, &d.rho)),
            (&mut self.rho_b, (&y.rho_b, &d.rho_b)),
            (&mut self.chi, (&y.chi, &d.chi)),
        ] {
            for (o, (x, z)) in dst.as_mut_slice().iter_mut().zip(src.as_slice().iter().zip(dd.as_slice())) {
                *o = x + z * a;
            }
        }
    }
}

/// `v_b = <0, b| H_I |1, vac>`; `H_I` has no other entries apart from their conjugates.
fn coupling_column(h: &SparseOp, basis: &TruncatedBasis) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); basis.bath_dim()];
    let excited = basis.index(1, 0);
    for &(i, j, z) in h.entries() {
        if j == excited {
            let (s, b) = basis.split(i);
            debug_assert_eq!(s, 0);
            v[b] = z;
        }
    }
    v
}

/// `Tr_S [H_I, chi]` for the coupling column `v`.
fn ptrace_sys_commutator(v: &[C64], chi: &ComplexMatrix, basis: &TruncatedBasis) -> ComplexMatrix {
    let nb = basis.bath_dim();
    let excited = basis.index(1, 0);
    let mut out = ComplexMatrix::zeros(nb);
    // v_b chi[(1,0),(0,c)] - chi[(0,b),(1,0)] conj(v_c)
    let top = &chi.row(excited)[..nb];
    for b in 0..nb {
        let left = chi[(basis.index(0, b), excited)];
        for (c, o) in out.row_mut(b).iter_mut().enumerate() {
            *o = v[b] * top[c] - left * v[c].conj();
        }
    }
    // + delta_b0 sum_k conj(v_k) chi[(0,k),(1,c)] - delta_c0 sum_k chi[(1,b),(0,k)] v_k
    for k in 1..nb {
        let ck = v[k].conj();
        let row = &chi.row(basis.index(0, k))[nb..];
        for (o, z) in out.row_mut(0).iter_mut().zip(row) {
            *o += ck * z;
        }
    }
    for b in 0..nb {
        let row = &chi.row(basis.index(1, b))[..nb];
        let s: C64 = row.iter().zip(v).map(|(z, vk)| z * vk).sum();
        out[(b, 0)] -= s;
    }
    out
}

pub(crate) struct Ull2Propagator {
    problem: Problem,
    state: SolverState,
    joint: Joint,
    stage: Joint,
    slope: Joint,
    next: Joint,
}

impl Ull2Propagator {
    pub(crate) fn new(problem: Problem) -> Result<Self> {
        let mut state = SolverState::initial(&problem);
        let nb = problem.basis().bath_dim();
        let joint = Joint {
            rho: problem.rho_s0().clone(),
            rho_b: problem.bath0(),
            chi: ComplexMatrix::zeros(problem.basis().dim()),
        };
        state.rho_b = Some(joint.rho_b.clone());
        Ok(Self {
            problem,
            state,
            joint,
            stage: Joint::zeros(nb),
            slope: Joint::zeros(nb),
            next: Joint::zeros(nb),
        })
    }

    /// `d chi = -i [H~, rho (x) rho_B]`,
    /// `d rho = -i [X, rho] - i Tr_B [H, chi]`,
    /// `d rho_B = -i [Y, rho_B] - i Tr_S [H, chi]`.
    fn derivative(&self, t: f64, y: &Joint, out: &mut Joint) -> Result<()> {
        let basis = self.problem.basis();
        let nb = basis.bath_dim();
        let h = hi_sparse(self.problem.modes(), basis, t)?;
        let v = coupling_column(&h, basis);
        let x = system_mean_field(&h, &y.rho_b, basis)?;
        let yc = bath_mean_field(&h, &y.rho, basis)?.commutator_hermitian_dense(&y.rho_b)?;
        let a = commutator(&x, &y.rho)?;
        let (rho, rb) = (&y.rho, &y.rho_b);

        // [H, Z] for Z = rho (x) rho_B from (HZ)[(0,b),(t,c)] = v_b rho_1t rb_0c and
        // (HZ)[(1,0),(t,c)] = rho_0t w_c, w = v^dag rb; then ZH = (HZ)^dag.
        let mut w = vec![C64::new(0.0, 0.0); nb];
        for k in 1..nb {
            let ck = v[k].conj();
            for (wc, z) in w.iter_mut().zip(rb.row(k)) {
                *wc += ck * z;
            }
        }
        let vc: Vec<C64> = v.iter().map(|z| z.conj()).collect();
        let zero = vec![C64::new(0.0, 0.0); nb];
        let rb0 = rb.row(0);
        for s in 0..2 {
            for b in 0..nb {
                let row = out.chi.row_mut(basis.index(s, b));
                for t in 0..2 {
                    let (p, u): (C64, &[C64]) = if s == 0 {
                        (v[b] * rho[(1, t)], rb0)
                    } else if b == 0 {
                        (rho[(0, t)], &w)
                    } else {
                        (C64::new(0.0, 0.0), &zero)
                    };
                    let (q, z): (C64, &[C64]) = if t == 0 {
                        (rho[(s, 1)] * rb[(b, 0)], &vc)
                    } else {
                        (C64::new(0.0, 0.0), &zero)
                    };
                    let (ast, rst) = (a[(s, t)], rho[(s, t)]);
                    let (rbr, ycr) = (rb.row(b), yc.row(b));
                    for c in 0..nb {
                        let val = p * u[c] - q * z[c] - ast * rbr[c] - rst * ycr[c];
                        row[t * nb + c] = C64::new(val.im, -val.re);
                    }
                    if t == 1 {
                        // (ZH)[(s,b),(1,0)] = rho_s0 conj(w_b)
                        let val = rho[(s, 0)] * w[b].conj();
                        row[nb] += C64::new(-val.im, val.re);
                    }
                }
            }
        }

        out.rho = commutator(&x, rho)?;
        out.rho += &h.ptrace_bath_commutator(&y.chi, basis)?;
        out.rho.scale_mut(MINUS_I);

        out.rho_b = yc;
        out.rho_b += &ptrace_sys_commutator(&v, &y.chi, basis);
        out.rho_b.scale_mut(MINUS_I);
        Ok(())
    }

    fn rk4_step(&mut self) -> Result<()> {
        let (t, h) = (self.state.time, self.problem.dt());
        let mut slope = core::mem::replace(&mut self.slope, Joint::zeros(0));
        let mut stage = core::mem::replace(&mut self.stage, Joint::zeros(0));
        let mut next = core::mem::replace(&mut self.next, Joint::zeros(0));
        let result = (|| {
            next.clone_from(&self.joint);
            self.derivative(t, &self.joint, &mut slope)?;
            next.add_scaled(h / 6.0, &slope);
            stage.set_sum(&self.joint, 0.5 * h, &slope);
            self.derivative(t + 0.5 * h, &stage, &mut slope)?;
            next.add_scaled(h / 3.0, &slope);
            stage.set_sum(&self.joint, 0.5 * h, &slope);
            self.derivative(t + 0.5 * h, &stage, &mut slope)?;
            next.add_scaled(h / 3.0, &slope);
            stage.set_sum(&self.joint, h, &slope);
            self.derivative(t + h, &stage, &mut slope)?;
            next.add_scaled(h / 6.0, &slope);
            Ok(())
        })();
        if result.is_ok() {
            core::mem::swap(&mut self.joint, &mut next);
        }
        self.slope = slope;
        self.stage = stage;
        self.next = next;
        result
    }
}

impl Propagator for Ull2Propagator {
    fn method(&self) -> MethodId {
        MethodId::Ull2
    }

    fn problem(&self) -> &Problem {
        &self.problem
    }

    fn state(&self) -> &SolverState {
        &self.state
    }

    fn step(&mut self) -> Result<()> {
        let dt = self.problem.dt();
        self.rk4_step()?;
        self.state.advance(self.joint.rho.clone(), dt).map_err(|e| e.with_method(MethodId::Ull2))?;
        let drift = self.joint.chi.hermitian_deviation();
        if !(drift <= CHI_HERMITICITY_GUARD) {
            return Err(Error::NumericalInstability {
                method: Some(MethodId::Ull2),
                quantity: "chi hermiticity",
                value: drift,
                time: self.state.time,
            });
        }
        self.state.rho_b = Some(self.joint.rho_b.clone());
        Ok(())
    }

    fn rhs(&self) -> Result<ComplexMatrix> {
        let y = Joint {
            rho: self.state.rho_s.clone(),
            ..self.joint.clone()
        };
        let mut out = Joint::zeros(self.problem.basis().bath_dim());
        self.derivative(self.state.time, &y, &mut out)?;
        Ok(out.rho)
    }

    fn correlation(&self) -> Result<CorrelationOp> {
        Ok(CorrelationOp::dense(MethodId::Ull2, self.state.time, self.joint.chi.clone()))
    }

    fn effective_bath(&self) -> ComplexMatrix {
        self.joint.rho_b.clone()
    }

    fn chi_norm(&self) -> Result<f64> {
        Ok(self.joint.chi.frobenius_norm())
    }

    fn chi_distance(&self, exact: &ExactSnapshot) -> Result<f64> {
        exact.hs_distance_dense(&self.joint.chi)
    }

    fn chi_metrics(&self, exact: &ExactSnapshot) -> Result<(f64, f64)> {
        Ok((self.chi_norm()?, self.chi_distance(exact)?))
    }
}
