//! Complex operator algebra on the truncated product basis.

mod basis;
mod eigen;
mod matrix;
mod metrics;
mod sparse;

pub use basis::{ptrace_bath, ptrace_sys, tensor_sb, TruncatedBasis};
pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, min_eigenvalue, HermitianEigen, DEFAULT_TOL,
    HERMITIAN_INPUT_TOL, MAX_SWEEPS,
};
pub use matrix::{anticommutator, commutator, qubit, ComplexMatrix};
pub use metrics::{hs_distance, hs_norm, trace_distance};
pub use sparse::{sparse_commutator, SparseOp};
