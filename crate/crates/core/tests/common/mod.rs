#![allow(dead_code)]

use chiunfold_core::model::{discretize, ModeSet, SpectralDensity};
use chiunfold_core::opalg::{qubit, ComplexMatrix};
use chiunfold_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ohmic(m: usize) -> ModeSet {
    discretize(&SpectralDensity::ohmic(1.0, 10.0).unwrap(), m, 0.1, 1.0).unwrap()
}

pub fn lorentzian(m: usize, gamma: f64) -> ModeSet {
    discretize(&SpectralDensity::lorentzian(gamma, 0.2 * gamma).unwrap(), m, 0.05, 1.0).unwrap()
}

/// A few modes with a spread of detunings, one of them resonant.
pub fn small_modes(m: usize, seed: u64) -> ModeSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w: Vec<f64> = (0..m).map(|_| rng.gen_range(0.2..2.0)).collect();
    w[0] = 1.0;
    let g = (0..m).map(|_| rng.gen_range(0.1..0.4)).collect();
    ModeSet::from_parts(1.0, 0.1, w, g).unwrap()
}

pub fn random_density(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(2, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let rho = a.matmul(&a.adjoint()).unwrap();
    let tr = rho.trace();
    rho.scaled(tr.inv())
}

pub fn plus() -> ComplexMatrix {
    qubit::plus_state()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub mod brute;
