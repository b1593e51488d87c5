mod common;

use chiunfold_core::exact::{evolve_exact, reduced_and_chi, ExactScheme, ExactSnapshot, PureState};
use chiunfold_core::mesolve::{propagator, rate_generator, MethodId, Problem};
use chiunfold_core::model::{
    free_energies, hi_interaction_picture, redfield_k_sparse, redfield_rates, rotate_diagonal, tcl2_k_sparse,
};
use chiunfold_core::opalg::{commutator, hs_distance, qubit, sparse_commutator, ComplexMatrix, SparseOp, TruncatedBasis};
use chiunfold_core::unfold::{
    chi_cr, chi_lindblad_set, chi_mll, chi_nz2, chi_redfield, chi_tcl2, lindblad_gap_generators, universal_rhs,
    vacuum_bath, CorrelationOp,
};
use chiunfold_core::C64;
use common::{ohmic, plus, random_density, rng, small_modes};

const MINUS_I: C64 = C64::new(0.0, -1.0);

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `-i (C - I_S/2 (x) Tr_S C - Tr_B C (x) I_B/(M+1))`, all dense.
fn corrected(cm: &ComplexMatrix, basis: &TruncatedBasis) -> ComplexMatrix {
    let nb = basis.bath_dim();
    let half = ComplexMatrix::identity(2).scaled(c(0.5));
    let flat = ComplexMatrix::identity(nb).scaled(c(1.0 / nb as f64));
    let mut out = cm.clone();
    out -= &basis.tensor_sb(&half, &basis.ptrace_sys(cm).unwrap()).unwrap();
    out -= &basis.tensor_sb(&basis.ptrace_bath(cm).unwrap(), &flat).unwrap();
    out.scaled(MINUS_I)
}

fn product(rho: &ComplexMatrix, basis: &TruncatedBasis) -> ComplexMatrix {
    basis.tensor_sb(rho, &vacuum_bath(basis)).unwrap()
}

/// Composite Simpson rule for `int_a^b f`, `n` even.
fn simpson(a: f64, b: f64, n: usize, mut f: impl FnMut(f64) -> ComplexMatrix) -> ComplexMatrix {
    let h = (b - a) / n as f64;
    let mut acc = f(a).scaled(c(h / 3.0));
    for j in 1..=n {
        let w = if j == n { 1.0 } else if j % 2 == 1 { 4.0 } else { 2.0 };
        acc.axpy(c(w * h / 3.0), &f(a + j as f64 * h)).unwrap();
    }
    acc
}

#[test]
fn every_correlation_starts_at_zero() {
    let modes = small_modes(3, 1);
    let basis = TruncatedBasis::new(3).unwrap();
    let rho = random_density(&mut rng(2));
    let b = modes.delta_omega();
    assert_eq!(chi_tcl2(&rho, &modes, &basis, 0.0).unwrap().hs_norm(), 0.0);
    assert_eq!(chi_mll(&rho, &vacuum_bath(&basis), &modes, &basis, 0.0).unwrap().hs_norm(), 0.0);
    assert!(chi_cr(&rho, &rho, &modes, &basis, 0.0, b).unwrap().hs_norm() < 1e-15);
    assert_eq!(chi_nz2(&[rho.clone()], 0.01, &modes, &basis).unwrap().hs_norm(), 0.0);
    assert!(chi_nz2(&[], 0.01, &modes, &basis).is_err());
}

#[test]
fn redfield_correlation_is_born_nonzero() {
    let modes = ohmic(255);
    let basis = TruncatedBasis::new(255).unwrap();
    let chi = chi_redfield(&plus(), &modes, &basis, 0.0, modes.delta_omega()).unwrap();
    assert!(chi.hs_norm() > 1e-2, "{}", chi.hs_norm());
}

#[test]
fn correlation_invariants_hold_along_trajectories() {
    let modes = small_modes(3, 3);
    let problem = Problem::new(modes, random_density(&mut rng(4)), 0.005).unwrap();
    let basis = *problem.basis();
    for m in MethodId::ALL {
        let mut p = propagator(m, &problem).unwrap();
        for _ in 0..20 {
            for _ in 0..10 {
                p.step().unwrap();
            }
            let chi = p.correlation().unwrap();
            assert!(chi.hermitian_deviation() < 1e-10, "{m}");
            assert!(chi.trace().norm() < 1e-10, "{m}");
            if matches!(m, MethodId::Nz2 | MethodId::Tcl2 | MethodId::Redfield | MethodId::Cr | MethodId::Ull2) {
                assert!(chi.ptrace_sys(&basis).unwrap().max_abs() < 1e-9, "{m}");
                assert!(chi.ptrace_bath(&basis).unwrap().max_abs() < 1e-9, "{m}");
            }
            if m == MethodId::Lindblad {
                assert!(chi.ptrace_sys(&basis).unwrap().max_abs() < 1e-10);
            }
        }
    }
}

#[test]
fn tcl2_correlation_matches_quadrature() {
    let modes = small_modes(3, 5);
    let basis = TruncatedBasis::new(3).unwrap();
    let rho = random_density(&mut rng(6));
    let t = 1.7;
    let k = simpson(0.0, t, 4000, |s| hi_interaction_picture(&modes, &basis, s).unwrap());
    let oracle = corrected(&commutator(&k, &product(&rho, &basis)).unwrap(), &basis);
    let chi = chi_tcl2(&rho, &modes, &basis, t).unwrap().to_dense();
    assert!(chi.max_abs_diff(&oracle).unwrap() < 1e-8);
}

#[test]
fn nz2_correlation_matches_oversampled_quadrature() {
    let modes = small_modes(2, 7);
    let basis = TruncatedBasis::new(2).unwrap();
    // A smooth stand-in for a solver history.
    let rho_at = |s: f64| {
        let (p, q) = (0.5 + 0.3 * (0.8 * s).sin(), 0.3 * C64::from_polar(1.0, 1.3 * s));
        ComplexMatrix::from_rows([[c(1.0 - p), q], [q.conj(), c(p)]])
    };
    let (dt, steps) = (0.005, 40);
    let history: Vec<_> = (0..=steps).map(|i| rho_at(i as f64 * dt)).collect();
    let chi = chi_nz2(&history, dt, &modes, &basis).unwrap().to_dense();
    let memory = simpson(0.0, steps as f64 * dt, 10 * steps, |s| {
        commutator(&hi_interaction_picture(&modes, &basis, s).unwrap(), &product(&rho_at(s), &basis)).unwrap()
    });
    assert!(chi.max_abs_diff(&corrected(&memory, &basis)).unwrap() < 1e-6);
}

#[test]
fn diagonal_state_needs_no_system_trace_correction() {
    let modes = small_modes(3, 8);
    let basis = TruncatedBasis::new(3).unwrap();
    let rho = ComplexMatrix::from_real_diagonal(&[0.3, 0.7]);
    let k = tcl2_k_sparse(&modes, &basis, 0.9).unwrap();
    let raw = sparse_commutator(&k, &SparseOp::tensor_sb(&rho, &vacuum_bath(&basis), &basis).unwrap()).unwrap();
    assert!(raw.ptrace_sys(&basis).unwrap().max_abs() < 1e-15);
    let chi = chi_tcl2(&rho, &modes, &basis, 0.9).unwrap().to_dense();
    assert!(chi.max_abs_diff(&raw.to_dense().scaled(MINUS_I)).unwrap() < 1e-15);
}

#[test]
fn redfield_bath_trace_term_vanishes() {
    let modes = ohmic(32);
    let basis = TruncatedBasis::new(32).unwrap();
    let mut r = rng(9);
    for i in 0..10 {
        let rho = random_density(&mut r);
        let k = redfield_k_sparse(&modes, &basis, 0.3 * i as f64, modes.delta_omega()).unwrap();
        let cm = sparse_commutator(&k, &SparseOp::tensor_sb(&rho, &vacuum_bath(&basis), &basis).unwrap()).unwrap();
        assert!(cm.ptrace_bath(&basis).unwrap().max_abs() < 1e-12);
    }
}

#[test]
fn lindblad_gaps_rebuild_the_redfield_generator() {
    let modes = ohmic(32);
    let basis = TruncatedBasis::new(32).unwrap();
    let b = modes.delta_omega();
    let rates = redfield_rates(&modes, b).unwrap();
    let mut r = rng(10);
    for i in 0..20 {
        let t = 0.2 * i as f64;
        let rho = random_density(&mut r);
        let chi = chi_lindblad_set(&rho, &modes, &basis, t, b).unwrap();
        let gaps = chi.per_gap.as_ref().unwrap();
        assert_eq!(gaps.len(), 2);
        for g in gaps {
            assert!(g.chi.ptrace_sys(&basis).unwrap().max_abs() < 1e-10);
        }
        let mut sum = ComplexMatrix::zeros(2);
        for (_, g) in lindblad_gap_generators(t, &chi, &modes, &basis).unwrap() {
            sum += &g;
        }
        assert!(sum.max_abs_diff(&rate_generator(rates, &rho)).unwrap() < 1e-10);
    }
}

#[test]
fn lindblad_gap_correlations_pair_up_for_diagonal_states() {
    let modes = small_modes(2, 11);
    let basis = TruncatedBasis::new(2).unwrap();
    let rho = ComplexMatrix::from_real_diagonal(&[0.4, 0.6]);
    let chi = chi_lindblad_set(&rho, &modes, &basis, 0.5, 0.1).unwrap();
    let gaps = chi.per_gap.unwrap();
    let support = |m: &ComplexMatrix| {
        let mut s = Vec::new();
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                if m[(i, j)].norm() > 1e-14 {
                    s.push((i, j));
                }
            }
        }
        s
    };
    let plus_gap = gaps.iter().find(|g| g.omega > 0.0).unwrap().chi.to_dense();
    let minus_gap = gaps.iter().find(|g| g.omega < 0.0).unwrap().chi.to_dense();
    assert!(!support(&plus_gap).is_empty());
    assert_eq!(support(&plus_gap.adjoint()), support(&minus_gap));
    // Blocks couple |1, vac> to |0, k> and nothing else.
    let excited = basis.index(1, 0);
    for (i, j) in support(&plus_gap) {
        assert!(i == excited || j == excited);
    }
}

#[test]
fn mll_correlation_grows_linearly_from_zero() {
    let modes = small_modes(3, 12);
    let basis = TruncatedBasis::new(3).unwrap();
    let rho = random_density(&mut rng(13));
    let vac = vacuum_bath(&basis);
    let n = |t: f64| chi_mll(&rho, &vac, &modes, &basis, t).unwrap().hs_norm();
    let ratio = n(2e-4) / n(1e-4);
    assert!((ratio - 2.0).abs() < 1e-3, "{ratio}");
}

#[test]
fn mll_tracks_ull2_correlation_at_short_times() {
    let modes = small_modes(3, 14);
    let problem = Problem::new(modes, plus(), 0.001).unwrap();
    let mut ull = propagator(MethodId::Ull2, &problem).unwrap();
    let mut mll = propagator(MethodId::Mll, &problem).unwrap();
    for _ in 0..50 {
        ull.step().unwrap();
        mll.step().unwrap();
    }
    let a = ull.correlation().unwrap().to_dense();
    let b = mll.correlation().unwrap().to_dense();
    assert!(hs_distance(&a, &b).unwrap() < 0.1 * a.frobenius_norm());
}

#[test]
fn partial_trace_corrections_do_not_change_the_dynamics() {
    let modes = small_modes(3, 15);
    let basis = TruncatedBasis::new(3).unwrap();
    let vac = vacuum_bath(&basis);
    let mut r = rng(16);
    for i in 1..=10 {
        let t = 0.17 * i as f64;
        let rho = random_density(&mut r);
        let k = tcl2_k_sparse(&modes, &basis, t).unwrap();
        let raw = sparse_commutator(&k, &SparseOp::tensor_sb(&rho, &vac, &basis).unwrap())
            .unwrap()
            .scaled(MINUS_I);
        let bare = CorrelationOp::sparse(MethodId::Tcl2, t, raw);
        let full = chi_tcl2(&rho, &modes, &basis, t).unwrap();
        assert!(full.hs_norm() > 0.0);
        let a = universal_rhs(t, &bare, &rho, &vac, &modes, &basis).unwrap();
        let b = universal_rhs(t, &full, &rho, &vac, &modes, &basis).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }
}

#[test]
fn distance_to_exact_is_picture_independent() {
    let modes = small_modes(3, 17);
    let basis = TruncatedBasis::new(3).unwrap();
    let energies = free_energies(&modes, &basis).unwrap();
    let psi0 = PureState::product(c(0.6), c(0.8), 3).unwrap();
    let traj = evolve_exact(&modes, &psi0, 0.01, 1.0, ExactScheme::Eigenprop).unwrap();
    let psi = traj.last().unwrap();
    let t = psi.time;
    let approx = chi_tcl2(&qubit::pure(c(0.6), c(0.8)), &modes, &basis, t).unwrap().to_dense();
    let ip = reduced_and_chi(psi, &modes, &basis, true).unwrap().chi;
    let sp = reduced_and_chi(psi, &modes, &basis, false).unwrap().chi;
    let in_ip = hs_distance(&approx, &ip).unwrap();
    let in_sp = hs_distance(&rotate_diagonal(&approx, &energies, -t).unwrap(), &sp).unwrap();
    assert!((in_ip - in_sp).abs() < 1e-12);
    // And the snapshot's structured evaluation agrees with both.
    let snap = ExactSnapshot::new(psi, &modes, &basis).unwrap();
    assert!((snap.hs_distance_dense(&approx).unwrap() - in_ip).abs() < 1e-12);
}
