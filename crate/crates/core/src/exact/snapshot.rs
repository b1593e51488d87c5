use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fmath::sqrt;
use crate::model::{free_energies, ModeSet};
use crate::opalg::{trace_distance, ComplexMatrix, SparseOp, TruncatedBasis};

use super::evolve::PureState;

/// Reduced states and correlation of a total pure state, all dense.
#[derive(Clone, Debug)]
pub struct ReducedState {
    pub rho_s: ComplexMatrix,
    pub rho_b: ComplexMatrix,
    pub rho_sb: ComplexMatrix,
    pub chi: ComplexMatrix,
}

/// `rho_SB = |psi><psi|` embedded in the truncated basis, its partial traces and
/// `chi = rho_SB - rho_S (x) rho_B`.
///
/// With `interaction_picture`, `psi` is first rotated by `exp(i (H_S + H_B) t)`.
pub fn reduced_and_chi(
    psi: &PureState,
    modes: &ModeSet,
    basis: &TruncatedBasis,
    interaction_picture: bool,
) -> Result<ReducedState> {
    let v = basis_vector(psi, modes, basis, interaction_picture)?;
    let rho_sb = ComplexMatrix::outer(&v, &v)?;
    let rho_s = basis.ptrace_bath(&rho_sb)?;
    let rho_b = basis.ptrace_sys(&rho_sb)?;
    let mut chi = rho_sb.clone();
    chi -= &basis.tensor_sb(&rho_s, &rho_b)?;
    Ok(ReducedState {
        rho_s,
        rho_b,
        rho_sb,
        chi,
    })
}

fn basis_vector(psi: &PureState, modes: &ModeSet, basis: &TruncatedBasis, ip: bool) -> Result<Vec<C64>> {
    let mut v = psi.to_basis_vector(basis)?;
    if ip {
        let e = free_energies(modes, basis)?;
        for (z, &en) in v.iter_mut().zip(&e) {
            *z *= C64::from_polar(1.0, en * psi.time);
        }
    }
    Ok(v)
}

/// Interaction-picture view of one exact state, with `chi` evaluated entry by
/// entry instead of being stored.
///
/// The bath state has rank two: `rho_B = |u><u| + |c|^2 |vac><vac|` with
/// `u_b = <0, b|psi>` and `c = <1, vac|psi>`.
#[derive(Clone, Debug)]
pub struct ExactSnapshot {
    basis: TruncatedBasis,
    time: f64,
    psi: Vec<C64>,
    u: Vec<C64>,
    c2: f64,
    rho_s: ComplexMatrix,
    chi_norm_sqr: f64,
}

impl ExactSnapshot {
    pub fn new(psi: &PureState, modes: &ModeSet, basis: &TruncatedBasis) -> Result<Self> {
        let v = basis_vector(psi, modes, basis, true)?;
        let nb = basis.bath_dim();
        let u: Vec<C64> = v[..nb].to_vec();
        let c = v[basis.index(1, 0)];
        let mut rho_s = ComplexMatrix::zeros(2);
        rho_s[(0, 0)] = C64::new(u.iter().map(|z| z.norm_sqr()).sum(), 0.0);
        rho_s[(1, 1)] = C64::new(c.norm_sqr(), 0.0);
        rho_s[(0, 1)] = u[0] * c.conj();
        rho_s[(1, 0)] = c * u[0].conj();
        let mut snap = Self {
            basis: *basis,
            time: psi.time,
            psi: v,
            u,
            c2: c.norm_sqr(),
            rho_s,
            chi_norm_sqr: 0.0,
        };
        snap.chi_norm_sqr = snap.chi_norm_sqr_structured();
        Ok(snap)
    }

    /// `||chi||^2` summed without cancellation: entries that touch a
    /// two-excitation state `|1, k>` carry only the product-state part, whose
    /// sum factorizes; the remaining `(M+2)^2` block is summed directly.
    fn chi_norm_sqr_structured(&self) -> f64 {
        let nb = self.basis.bath_dim();
        let u2: Vec<f64> = self.u.iter().map(|z| z.norm_sqr()).collect();
        let u_all: f64 = u2.iter().sum();
        let u_exc = u_all - u2[0];
        let rs = |s: usize, t: usize| self.rho_s[(s, t)].norm_sqr();
        // rows (1, b >= 1): sum_t |rho_1t|^2 sum_{b>=1, c} |rho_B bc|^2
        let mut acc = (rs(1, 0) + rs(1, 1)) * u_exc * u_all;
        // rows (0, b), columns (1, c >= 1)
        acc += rs(0, 1) * u_all * u_exc;
        // row (1, 0), columns (1, c >= 1)
        acc += rs(1, 1) * u2[0] * u_exc;
        let support: Vec<usize> = (0..nb).map(|b| self.basis.index(0, b)).chain([self.basis.index(1, 0)]).collect();
        for &i in &support {
            for &j in &support {
                acc += self.chi_entry(i, j).norm_sqr();
            }
        }
        acc
    }

    #[cfg(test)]
    fn dense_chi_norm_sqr(&self) -> f64 {
        let d = self.basis.dim();
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += self.chi_entry(i, j).norm_sqr();
            }
        }
        acc
    }

    #[inline]
    pub fn time(&self) -> f64 {
        self.time
    }

    #[inline]
    pub fn basis(&self) -> &TruncatedBasis {
        &self.basis
    }

    /// Interaction-picture amplitudes in the flat index.
    #[inline]
    pub fn psi(&self) -> &[C64] {
        &self.psi
    }

    #[inline]
    pub fn rho_s(&self) -> &ComplexMatrix {
        &self.rho_s
    }

    #[inline]
    pub fn rho_b_entry(&self, b: usize, c: usize) -> C64 {
        let mut v = self.u[b] * self.u[c].conj();
        if b == 0 && c == 0 {
            v += self.c2;
        }
        v
    }

    pub fn rho_b(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.basis.bath_dim(), |b, c| self.rho_b_entry(b, c))
    }

    #[inline]
    pub fn chi_entry(&self, i: usize, j: usize) -> C64 {
        let (s, b) = self.basis.split(i);
        let (t, c) = self.basis.split(j);
        self.psi[i] * self.psi[j].conj() - self.rho_s[(s, t)] * self.rho_b_entry(b, c)
    }

    pub fn chi(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.basis.dim(), |i, j| self.chi_entry(i, j))
    }

    pub fn chi_norm(&self) -> f64 {
        sqrt(self.chi_norm_sqr)
    }

    /// `||chi^EX - other||_HS`, touching only the stored entries of `other`.
    pub fn hs_distance_sparse(&self, other: &SparseOp) -> Result<f64> {
        if other.dim() != self.basis.dim() {
            return Err(Error::dim("hs_distance_sparse", self.basis.dim(), other.dim()));
        }
        let (mut on_support, mut diff) = (0.0, 0.0);
        for &(i, j, v) in other.entries() {
            let e = self.chi_entry(i, j);
            on_support += e.norm_sqr();
            diff += (e - v).norm_sqr();
        }
        Ok(sqrt((self.chi_norm_sqr - on_support).max(0.0) + diff))
    }

    pub fn hs_distance_dense(&self, other: &ComplexMatrix) -> Result<f64> {
        self.basis.check("hs_distance_dense", other)?;
        let nb = self.basis.bath_dim();
        let mut acc = 0.0;
        for s in 0..2 {
            for b in 0..nb {
                let i = self.basis.index(s, b);
                let (pi, ub, row) = (self.psi[i], self.u[b], other.row(i));
                for t in 0..2 {
                    let r = self.rho_s[(s, t)];
                    let cols = t * nb..(t + 1) * nb;
                    for (c, ((pj, uc), v)) in self.psi[cols.clone()].iter().zip(&self.u).zip(&row[cols]).enumerate() {
                        let mut rb = ub * uc.conj();
                        if b == 0 && c == 0 {
                            rb += self.c2;
                        }
                        acc += (pi * pj.conj() - r * rb - v).norm_sqr();
                    }
                }
            }
        }
        Ok(sqrt(acc))
    }

    /// `D(rho_B(t), |vac><vac|)`, evaluated on the two-dimensional span of
    /// `|vac>` and the bath excitation amplitudes.
    pub fn bath_td_from_initial(&self) -> Result<f64> {
        let u0 = self.u[0];
        let d = sqrt(self.u[1..].iter().map(|z| z.norm_sqr()).sum());
        let rho = ComplexMatrix::from_rows([
            [C64::new(u0.norm_sqr() + self.c2, 0.0), u0 * d],
            [u0.conj() * d, C64::new(d * d, 0.0)],
        ]);
        trace_distance(&rho, &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]))
    }
}
