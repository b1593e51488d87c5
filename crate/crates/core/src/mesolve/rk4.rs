use crate::error::Result;
use crate::opalg::ComplexMatrix;
use crate::C64;

/// A state that classical Runge-Kutta can combine linearly.
pub(crate) trait Rk4State: Clone {
    /// `self += a * other`
    fn add_scaled(&mut self, a: f64, other: &Self);
}

impl Rk4State for ComplexMatrix {
    fn add_scaled(&mut self, a: f64, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        let a = C64::new(a, 0.0);
        for (x, y) in self.as_mut_slice().iter_mut().zip(other.as_slice()) {
            *x += a * y;
        }
    }
}

pub(crate) fn rk4<S: Rk4State>(t: f64, y: &S, h: f64, mut f: impl FnMut(f64, &S) -> Result<S>) -> Result<S> {
    let k1 = f(t, y)?;
    let mut tmp = y.clone();
    tmp.add_scaled(0.5 * h, &k1);
    let k2 = f(t + 0.5 * h, &tmp)?;
    tmp = y.clone();
    tmp.add_scaled(0.5 * h, &k2);
    let k3 = f(t + 0.5 * h, &tmp)?;
    tmp = y.clone();
    tmp.add_scaled(h, &k3);
    let k4 = f(t + h, &tmp)?;
    let mut out = y.clone();
    out.add_scaled(h / 6.0, &k1);
    out.add_scaled(h / 3.0, &k2);
    out.add_scaled(h / 3.0, &k3);
    out.add_scaled(h / 6.0, &k4);
    Ok(out)
}
