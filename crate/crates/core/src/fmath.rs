// Float intrinsics for `no_std` builds.

pub(crate) use libm::{cos, exp, fabs as abs, sin, sqrt};

pub(crate) const PI: f64 = core::f64::consts::PI;
