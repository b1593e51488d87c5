use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::exact::ExactSnapshot;
use crate::mesolve::MethodId;
use crate::opalg::{ComplexMatrix, SparseOp, TruncatedBasis};

#[derive(Clone, Debug, PartialEq)]
pub enum ChiRepr {
    Dense(ComplexMatrix),
    Sparse(SparseOp),
}

/// `chi(omega; t)` for one Bohr frequency `omega` of the qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct GapCorrelation {
    pub omega: f64,
    pub chi: SparseOp,
}

/// Approximate system-bath correlation of one method at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationOp {
    pub method: MethodId,
    pub time: f64,
    pub op: ChiRepr,
    /// Per-gap set; only for [`MethodId::Lindblad`], whose `op` is their sum.
    pub per_gap: Option<Vec<GapCorrelation>>,
}

impl CorrelationOp {
    pub fn sparse(method: MethodId, time: f64, op: SparseOp) -> Self {
        Self {
            method,
            time,
            op: ChiRepr::Sparse(op),
            per_gap: None,
        }
    }

    pub fn dense(method: MethodId, time: f64, op: ComplexMatrix) -> Self {
        Self {
            method,
            time,
            op: ChiRepr::Dense(op),
            per_gap: None,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.op {
            ChiRepr::Dense(m) => m.dim(),
            ChiRepr::Sparse(s) => s.dim(),
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        match &self.op {
            ChiRepr::Dense(m) => m.clone(),
            ChiRepr::Sparse(s) => s.to_dense(),
        }
    }

    pub fn hs_norm(&self) -> f64 {
        match &self.op {
            ChiRepr::Dense(m) => m.frobenius_norm(),
            ChiRepr::Sparse(s) => s.frobenius_norm(),
        }
    }

    pub fn trace(&self) -> C64 {
        match &self.op {
            ChiRepr::Dense(m) => m.trace(),
            ChiRepr::Sparse(s) => s.trace(),
        }
    }

    pub fn hermitian_deviation(&self) -> f64 {
        match &self.op {
            ChiRepr::Dense(m) => m.hermitian_deviation(),
            ChiRepr::Sparse(s) => s.hermitian_deviation(),
        }
    }

    pub fn ptrace_bath(&self, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        match &self.op {
            ChiRepr::Dense(m) => basis.ptrace_bath(m),
            ChiRepr::Sparse(s) => s.ptrace_bath(basis),
        }
    }

    pub fn ptrace_sys(&self, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        match &self.op {
            ChiRepr::Dense(m) => basis.ptrace_sys(m),
            ChiRepr::Sparse(s) => s.ptrace_sys(basis),
        }
    }

    /// `Tr_B [h, chi]`
    pub fn ptrace_bath_commutator(&self, h: &SparseOp, basis: &TruncatedBasis) -> Result<ComplexMatrix> {
        match &self.op {
            ChiRepr::Dense(m) => h.ptrace_bath_commutator(m, basis),
            ChiRepr::Sparse(s) => h.ptrace_bath_commutator_sparse(s, basis),
        }
    }

    /// `D_HS(chi, chi^EX)`
    pub fn hs_distance_to_exact(&self, exact: &ExactSnapshot) -> Result<f64> {
        match &self.op {
            ChiRepr::Dense(m) => exact.hs_distance_dense(m),
            ChiRepr::Sparse(s) => exact.hs_distance_sparse(s),
        }
    }
}
