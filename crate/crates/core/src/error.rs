use core::fmt;

use crate::mesolve::MethodId;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand dimensions do not agree.
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    /// Input expected to be Hermitian is not (max |A - A^dag| given).
    NotHermitian { deviation: f64 },
    /// Jacobi sweeps exhausted before the off-diagonal norm dropped below tolerance.
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    /// A physical or numerical parameter is out of range.
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    /// A conserved quantity drifted beyond its guard.
    NumericalInstability {
        method: Option<MethodId>,
        quantity: &'static str,
        value: f64,
        time: f64,
    },
    /// A memory integral was requested with no samples.
    EmptyHistory,
}

impl Error {
    pub(crate) fn dim(op: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            op,
            expected,
            found,
        }
    }

    pub(crate) fn param(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }

    /// Tags an instability error with the method that produced it.
    pub fn with_method(self, id: MethodId) -> Self {
        match self {
            Error::NumericalInstability {
                quantity,
                value,
                time,
                ..
            } => Error::NumericalInstability {
                method: Some(id),
                quantity,
                value,
                time,
            },
            other => other,
        }
    }

    /// True for contract/configuration errors as opposed to solver failures.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. } | Error::InvalidParameter { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                op,
                expected,
                found,
            } => write!(f, "{op}: dimension mismatch (expected {expected}, found {found})"),
            Error::NotHermitian { deviation } => {
                write!(f, "operator is not Hermitian (max deviation {deviation:.3e})")
            }
            Error::NoConvergence {
                sweeps,
                off_diagonal,
            } => write!(
                f,
                "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:.3e})"
            ),
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::NumericalInstability {
                method,
                quantity,
                value,
                time,
            } => {
                if let Some(m) = method {
                    write!(f, "{m}: ")?;
                }
                write!(f, "{quantity} drifted to {value:.3e} at t = {time}")
            }
            Error::EmptyHistory => f.write_str("memory history is empty"),
        }
    }
}
