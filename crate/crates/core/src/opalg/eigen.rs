use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fmath::sqrt;

use super::matrix::ComplexMatrix;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
/// Inputs further than this from Hermitian are rejected.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Unitary whose column `k` is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    jacobi(a, tol, false).map(|e| e.values)
}

pub fn hermitian_eigen(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    jacobi(a, tol, true)
}

fn off_diagonal_max(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut m = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

// Cyclic complex Jacobi. For a_pq = r e^{i phi} the rotation
//   U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
// zeroes (p, q) in U^dag A U.
fn jacobi(input: &ComplexMatrix, tol: f64, want_vectors: bool) -> Result<HermitianEigen> {
    let deviation = input.hermitian_deviation();
    if deviation > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    if !(tol > 0.0) {
        return Err(Error::param("tol", "must be positive"));
    }
    let n = input.dim();
    let mut a = input.hermitian_part();
    let mut v = if want_vectors {
        ComplexMatrix::identity(n)
    } else {
        ComplexMatrix::zeros(0)
    };
    let threshold = tol * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_max(&a) < threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off_diagonal_max(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < threshold * 1e-3 {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                let ec = phase.conj();
                let (upp, upq, uqp, uqq) = (C64::new(c, 0.0), C64::new(s, 0.0), -ec * s, ec * c);

                // A <- A U
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                }
                // A <- U^dag A
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                if want_vectors {
                    for k in 0..n {
                        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = vkp * upp + vkq * uqp;
                        v[(k, q)] = vkp * upq + vkq * uqq;
                    }
                }
            }
        }
        converged = off_diagonal_max(&a) < threshold;
    }
    log::trace!("jacobi: n = {n}, {sweeps} sweeps");

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        ComplexMatrix::from_fn(n, |k, col| v[(k, order[col])])
    } else {
        v
    };
    Ok(HermitianEigen { values, vectors })
}

/// Smallest eigenvalue of a Hermitian matrix; closed form for 2x2.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    if a.dim() == 2 {
        let deviation = a.hermitian_deviation();
        if deviation > HERMITIAN_INPUT_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let (x, y) = (a[(0, 0)].re, a[(1, 1)].re);
        let c = 0.5 * (a[(0, 1)] + a[(1, 0)].conj());
        let half = 0.5 * (x - y);
        return Ok(0.5 * (x + y) - sqrt(half * half + c.norm_sqr()));
    }
    Ok(hermitian_eigenvalues(a, DEFAULT_TOL)?.first().copied().unwrap_or(0.0))
}
