//! The full `2^(M+1)`-dimensional qubit-plus-TLS-bath model, integrated with
//! no use of the one-excitation structure.

use chiunfold_core::model::ModeSet;
use chiunfold_core::opalg::TruncatedBasis;
use chiunfold_core::C64;

/// Bit 0..M-1 is bath mode k, bit M is the qubit.
pub struct FullModel {
    m: usize,
    diag: Vec<f64>,
    /// `(i, j, g)` with `i < j`, one per hopping pair.
    hops: Vec<(usize, usize, f64)>,
}

impl FullModel {
    pub fn new(modes: &ModeSet) -> Self {
        let m = modes.len();
        let dim = 1usize << (m + 1);
        let q = 1usize << m;
        let diag = (0..dim)
            .map(|i| {
                let mut e = if i & q != 0 { modes.omega0() } else { 0.0 };
                for k in 0..m {
                    if i & (1 << k) != 0 {
                        e += modes.omegas()[k];
                    }
                }
                e
            })
            .collect();
        // g_k (sigma_- tau_+^k + h.c.)
        let mut hops = Vec::new();
        for i in 0..dim {
            for k in 0..m {
                if i & q != 0 && i & (1 << k) == 0 {
                    let j = (i & !q) | (1 << k);
                    hops.push((i.min(j), i.max(j), modes.gs()[k]));
                }
            }
        }
        Self { m, diag, hops }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, psi: &[C64], out: &mut [C64]) {
        for (o, (p, e)) in out.iter_mut().zip(psi.iter().zip(&self.diag)) {
            *o = p * e;
        }
        for &(i, j, g) in &self.hops {
            out[i] += psi[j] * g;
            out[j] += psi[i] * g;
        }
    }

    /// `-i H psi`
    fn deriv(&self, psi: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); psi.len()];
        self.apply(psi, &mut out);
        out.iter().map(|z| z * C64::new(0.0, -1.0)).collect()
    }

    /// Classical RK4 from `psi` over `n` steps of `h`.
    pub fn evolve(&self, psi: &[C64], h: f64, n: usize) -> Vec<C64> {
        let mut y = psi.to_vec();
        let axpy = |y: &[C64], a: f64, k: &[C64]| -> Vec<C64> { y.iter().zip(k).map(|(y, k)| y + k * a).collect() };
        for _ in 0..n {
            let k1 = self.deriv(&y);
            let k2 = self.deriv(&axpy(&y, 0.5 * h, &k1));
            let k3 = self.deriv(&axpy(&y, 0.5 * h, &k2));
            let k4 = self.deriv(&axpy(&y, h, &k3));
            for i in 0..y.len() {
                y[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
            }
        }
        y
    }

    /// `(a|0> + b|1>) (x) |vac>`
    pub fn product(&self, a: C64, b: C64) -> Vec<C64> {
        let mut psi = vec![C64::new(0.0, 0.0); self.dim()];
        psi[0] = a;
        psi[1 << self.m] = b;
        psi
    }

    /// Components on `|s, b>` of the truncated basis, and the weight left outside it.
    pub fn project(&self, psi: &[C64], basis: &TruncatedBasis) -> (Vec<C64>, f64) {
        let mut out = vec![C64::new(0.0, 0.0); basis.dim()];
        let mut outside = 0.0;
        for (i, z) in psi.iter().enumerate() {
            let s = i >> self.m;
            let bath = i & ((1 << self.m) - 1);
            match bath.count_ones() {
                0 => out[basis.index(s, 0)] = *z,
                1 => out[basis.index(s, bath.trailing_zeros() as usize + 1)] = *z,
                _ => outside += z.norm_sqr(),
            }
        }
        (out, outside)
    }
}

/// Largest entrywise deviation between the truncated exact solver and the full
/// model over `t in [0, t_final]`, sampled every `sample`.
pub fn truncation_deviation(modes: &ModeSet, a: C64, b: C64, t_final: f64, sample: f64) -> f64 {
    use chiunfold_core::exact::{evolve_exact, ExactScheme, PureState};
    let basis = TruncatedBasis::new(modes.len()).unwrap();
    let full = FullModel::new(modes);
    let traj = evolve_exact(modes, &PureState::product(a, b, modes.len()).unwrap(), sample, t_final, ExactScheme::Eigenprop)
        .unwrap();
    let sub = 100;
    let mut psi = full.product(a, b);
    let mut worst = 0.0f64;
    for (i, state) in traj.iter().enumerate() {
        if i > 0 {
            psi = full.evolve(&psi, sample / sub as f64, sub);
        }
        let (proj, outside) = full.project(&psi, &basis);
        let restricted = state.to_basis_vector(&basis).unwrap();
        worst = worst.max(outside.sqrt());
        for (x, y) in proj.iter().zip(&restricted) {
            worst = worst.max((x - y).norm());
        }
    }
    worst
}
