use crate::error::{Error, Result};
use crate::fmath::{abs, sqrt};

use super::eigen::{hermitian_eigenvalues, DEFAULT_TOL, HERMITIAN_INPUT_TOL};
use super::matrix::ComplexMatrix;

/// `sqrt(Tr A^dag A)`
pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm()
}

/// Hilbert-Schmidt (Frobenius) distance.
pub fn hs_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.check_dim("hs_distance", b)?;
    Ok(sqrt(
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>(),
    ))
}

/// `1/2 sum_i |lambda_i(rho - sigma)|`
pub fn trace_distance(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    rho.check_dim("trace_distance", sigma)?;
    for m in [rho, sigma] {
        let deviation = m.hermitian_deviation();
        if deviation > HERMITIAN_INPUT_TOL {
            return Err(Error::NotHermitian { deviation });
        }
    }
    let ev = hermitian_eigenvalues(&(rho - sigma), DEFAULT_TOL)?;
    Ok(0.5 * ev.iter().map(|&x| abs(x)).sum::<f64>())
}
