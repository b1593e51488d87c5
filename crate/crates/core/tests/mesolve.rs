mod common;

use chiunfold_core::exact::{evolve_exact, ExactScheme, ExactSnapshot, PureState};
use chiunfold_core::mesolve::{
    lindblad_generator, propagator, rate_generator, solve, solve_mll, solve_nz2, solve_redfield, solve_tcl2,
    solve_ull2, MethodId, Problem,
};
use chiunfold_core::model::{cr_rates, hi_interaction_picture, redfield_rates, tcl2_rates, ModeSet, RatePair};
use chiunfold_core::opalg::{commutator, trace_distance, ComplexMatrix, TruncatedBasis};
use chiunfold_core::unfold::vacuum_bath;
use chiunfold_core::C64;
use common::{ohmic, plus, random_density, rng, small_modes};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `rho_S` of the exact solution in the interaction picture, every `dt`.
fn exact_rho(modes: &ModeSet, dt: f64, t_final: f64) -> Vec<ComplexMatrix> {
    let basis = TruncatedBasis::new(modes.len()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi0 = PureState::product(c(s), c(s), modes.len()).unwrap();
    evolve_exact(modes, &psi0, dt, t_final, ExactScheme::Eigenprop)
        .unwrap()
        .iter()
        .map(|psi| ExactSnapshot::new(psi, modes, &basis).unwrap().rho_s().clone())
        .collect()
}

/// `-Tr_B [H(t), X]`, dense.
fn force(modes: &ModeSet, basis: &TruncatedBasis, t: f64, x: &ComplexMatrix) -> ComplexMatrix {
    let h = hi_interaction_picture(modes, basis, t).unwrap();
    basis.ptrace_bath(&commutator(&h, x).unwrap()).unwrap().scaled(c(-1.0))
}

/// `[H(s), rho (x) |vac><vac|]`, dense.
fn integrand(modes: &ModeSet, basis: &TruncatedBasis, s: f64, rho: &ComplexMatrix) -> ComplexMatrix {
    let h = hi_interaction_picture(modes, basis, s).unwrap();
    commutator(&h, &basis.tensor_sb(rho, &vacuum_bath(basis)).unwrap()).unwrap()
}

#[test]
fn decoupled_bath_leaves_the_qubit_alone() {
    let modes = ohmic(8).scaled(0.0);
    let rho0 = random_density(&mut rng(1));
    let problem = Problem::new(modes, rho0.clone(), 0.01).unwrap();
    for m in MethodId::ALL {
        let r = solve(m, &problem, 0.5).unwrap();
        for rho in &r.rho_s {
            assert!(rho.max_abs_diff(&rho0).unwrap() < 1e-14, "{m}");
        }
    }
}

#[test]
fn trace_and_hermiticity_are_preserved() {
    let modes = ohmic(16);
    for rho0 in [plus(), random_density(&mut rng(2))] {
        let problem = Problem::new(modes.clone(), rho0, 0.002).unwrap();
        for m in MethodId::ALL {
            let r = solve(m, &problem, 1.0).unwrap();
            assert_eq!(r.rho_s.len(), 501);
            for rho in &r.rho_s {
                assert!((rho.trace() - c(1.0)).norm() < 1e-9, "{m}");
                assert!(rho.hermitian_deviation() < 1e-10, "{m}");
            }
        }
    }
}

#[test]
fn redfield_follows_its_closed_form() {
    let modes = ohmic(64);
    let b = modes.delta_omega();
    let rates = redfield_rates(&modes, b).unwrap();
    let rho0 = random_density(&mut rng(3));
    let r = solve_redfield(&modes, &rho0, 0.001, 2.0, b).unwrap();
    for (t, rho) in r.times.iter().zip(&r.rho_s) {
        let pop = rho0[(1, 1)].re * (-2.0 * rates.gamma * t).exp();
        let coh = rho0[(0, 1)].norm() * (-rates.gamma * t).exp();
        assert!((rho[(1, 1)].re - pop).abs() < 1e-10);
        assert!((rho[(0, 1)].norm() - coh).abs() < 1e-10);
    }
}

#[test]
fn zero_decay_rate_is_a_pure_phase_rotation() {
    let rho = random_density(&mut rng(4));
    let d = rate_generator(RatePair::new(0.0, 0.7), &rho);
    assert!(d[(0, 0)].norm() < 1e-15 && d[(1, 1)].norm() < 1e-15);
    // d/dt |rho_01|^2 = 2 Re(conj(rho_01) d rho_01) = 0
    assert!((rho[(0, 1)].conj() * d[(0, 1)]).re.abs() < 1e-15);
    assert!((d[(0, 1)].norm() - 0.7 * rho[(0, 1)].norm()).abs() < 1e-15);
}

#[test]
fn lindblad_generator_equals_redfield_generator() {
    let modes = ohmic(64);
    let b = modes.delta_omega();
    let rates = redfield_rates(&modes, b).unwrap();
    let mut r = rng(5);
    for i in 0..50 {
        let rho = random_density(&mut r);
        let l = lindblad_generator(&modes, b, 0.1 * i as f64, &rho).unwrap();
        assert!(l.max_abs_diff(&rate_generator(rates, &rho)).unwrap() < 1e-12);
    }
}

#[test]
fn lindblad_and_redfield_trajectories_coincide() {
    let modes = ohmic(32);
    let b = modes.delta_omega();
    let rho0 = plus();
    let r = solve_redfield(&modes, &rho0, 0.002, 1.0, b).unwrap();
    let l = solve(MethodId::Lindblad, &Problem::new(modes, rho0, 0.002).unwrap(), 1.0).unwrap();
    for (x, y) in r.rho_s.iter().zip(&l.rho_s) {
        assert!(x.max_abs_diff(y).unwrap() < 1e-12);
    }
}

#[test]
fn corrected_redfield_starts_flat() {
    let modes = ohmic(64);
    for rho0 in [plus(), random_density(&mut rng(6))] {
        let problem = Problem::new(modes.clone(), rho0, 0.001).unwrap();
        let cr = propagator(MethodId::Cr, &problem).unwrap();
        assert!(cr.rhs().unwrap().max_abs() < 1e-10);
        let red = propagator(MethodId::Redfield, &problem).unwrap();
        assert!(red.rhs().unwrap().max_abs() > 1e-3);
    }
}

#[test]
fn corrected_redfield_counter_rate_dies_out() {
    let modes = ohmic(255);
    let b = modes.delta_omega();
    let gamma_r = redfield_rates(&modes, b).unwrap().gamma;
    let late = cr_rates(&modes, 20.0, b).unwrap();
    assert!(late.gamma.abs() < 0.1 * gamma_r, "{} vs {}", late.gamma, gamma_r);
}

#[test]
fn tcl2_rates_match_double_commutator_quadrature() {
    let modes = small_modes(3, 7);
    let basis = TruncatedBasis::new(3).unwrap();
    let mut r = rng(8);
    for i in 1..=20 {
        let t = 0.1 * i as f64;
        let rho = random_density(&mut r);
        // Simpson rule for int_0^t H(s) ds
        let n = 2000;
        let h = t / n as f64;
        let mut k = ComplexMatrix::zeros(basis.dim());
        for j in 0..=n {
            let w = if j == 0 || j == n {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            k.axpy(c(w * h / 3.0), &hi_interaction_picture(&modes, &basis, j as f64 * h).unwrap())
                .unwrap();
        }
        let p = basis.tensor_sb(&rho, &vacuum_bath(&basis)).unwrap();
        let oracle = force(&modes, &basis, t, &commutator(&k, &p).unwrap());
        let fast = rate_generator(tcl2_rates(&modes, t), &rho);
        assert!(fast.max_abs_diff(&oracle).unwrap() < 1e-10, "t = {t}");
    }
}

#[test]
fn tcl2_population_leaves_quadratically() {
    let modes = ohmic(64);
    let r = solve_tcl2(&modes, &ComplexMatrix::from_real_diagonal(&[0.0, 1.0]), 1e-4, 0.02).unwrap();
    let loss = |i: usize| 1.0 - r.rho_s[i][(1, 1)].re;
    let ratio = loss(200) / loss(100);
    assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    let half = solve_tcl2(&modes, &ComplexMatrix::from_real_diagonal(&[0.0, 1.0]), 5e-5, 0.02).unwrap();
    assert!((1.0 - half.rho_s[400][(1, 1)].re - loss(200)).abs() < 1e-12);
}

#[test]
fn nz2_matches_naive_requadrature() {
    let modes = small_modes(3, 9);
    let basis = TruncatedBasis::new(3).unwrap();
    let (dt, steps) = (0.01, 100);
    let rho0 = random_density(&mut rng(10));
    let fast = solve_nz2(&modes, &rho0, dt, dt * steps as f64).unwrap();

    // Every memory integral is re-summed from the stored history.
    let memory = |hist: &[(f64, ComplexMatrix)]| {
        let mut m = ComplexMatrix::zeros(basis.dim());
        for w in hist.windows(2) {
            m.axpy(c(0.5 * dt), &integrand(&modes, &basis, w[0].0, &w[0].1)).unwrap();
            m.axpy(c(0.5 * dt), &integrand(&modes, &basis, w[1].0, &w[1].1)).unwrap();
        }
        m
    };
    let mut hist = vec![(0.0, rho0.clone())];
    for n in 0..steps {
        let (t, rho) = hist[n].clone();
        let f0 = force(&modes, &basis, t, &memory(&hist));
        let mut rho_p = rho.clone();
        rho_p.axpy(c(dt), &f0).unwrap();
        let mut trial = hist.clone();
        trial.push((t + dt, rho_p));
        let f1 = force(&modes, &basis, t + dt, &memory(&trial));
        let mut next = rho.clone();
        next.axpy(c(0.5 * dt), &(&f0 + &f1)).unwrap();
        hist.push((t + dt, next));
    }
    for (a, (_, b)) in fast.rho_s.iter().zip(&hist) {
        assert!(a.max_abs_diff(b).unwrap() < 1e-9);
    }
}

#[test]
fn memory_methods_start_at_rest() {
    let problem = Problem::new(ohmic(16), plus(), 0.001).unwrap();
    for m in [MethodId::Nz2, MethodId::Mll, MethodId::Ull2, MethodId::Tcl2] {
        let p = propagator(m, &problem).unwrap();
        assert!(p.rhs().unwrap().max_abs() < 1e-15, "{m}");
    }
}

#[test]
fn mll_and_ull2_agree_beyond_first_order() {
    let modes = small_modes(3, 11);
    let rho0 = random_density(&mut rng(12));
    let dt = 1e-3;
    let mll = solve_mll(&modes, &rho0, dt, 0.2).unwrap();
    let ull = solve_ull2(&modes, &rho0, dt, 0.2).unwrap();
    let gap = |i: usize| trace_distance(&mll.rho_s[i], &ull.rho_s[i]).unwrap();
    // Same value and slope at t = 0: the gap is C t^2.
    let (g1, g2) = (gap(100), gap(200));
    assert!(g2 > 0.0);
    assert!((g1 / g2 - 0.25).abs() < 0.02, "{g1} {g2}");
}

#[test]
fn ull2_error_shrinks_faster_than_the_coupling() {
    let base = small_modes(3, 13);
    let err = |scale: f64| {
        let modes = base.scaled(scale);
        let exact = exact_rho(&modes, 0.002, 2.0);
        let ull = solve_ull2(&modes, &plus(), 0.002, 2.0).unwrap();
        exact
            .iter()
            .zip(&ull.rho_s)
            .map(|(a, b)| trace_distance(a, b).unwrap())
            .fold(0.0, f64::max)
    };
    let (weak, strong) = (err(0.1), err(0.2));
    assert!(weak < 10.0 * strong / 8.0, "{weak} {strong}");
    // In practice the ratio is close to the fourth power.
    assert!(weak < strong / 8.0, "{weak} {strong}");
}

#[test]
fn halving_the_step_barely_moves_the_final_state() {
    let modes = ohmic(32);
    let coarse = Problem::new(modes.clone(), plus(), 0.002).unwrap();
    let fine = Problem::new(modes, plus(), 0.001).unwrap();
    for m in MethodId::ALL {
        let a = solve(m, &coarse, 1.0).unwrap();
        let b = solve(m, &fine, 1.0).unwrap();
        let d = trace_distance(a.final_state().unwrap(), b.final_state().unwrap()).unwrap();
        let tol = if m == MethodId::Nz2 { 1e-5 } else { 1e-6 };
        assert!(d < tol, "{m}: {d}");
    }
}

/// Largest pairwise trace distance among ULL2, NZ2 and TCL2 over `t <= 0.1`.
fn short_time_spread(modes: &ModeSet, with_ull2: bool) -> f64 {
    let dt = 0.0005;
    let nz = solve_nz2(modes, &plus(), dt, 0.1).unwrap();
    let tcl = solve_tcl2(modes, &plus(), dt, 0.1).unwrap();
    let ull = with_ull2.then(|| solve_ull2(modes, &plus(), dt, 0.1).unwrap());
    let mut worst = 0.0f64;
    for i in 0..nz.rho_s.len() {
        worst = worst.max(trace_distance(&nz.rho_s[i], &tcl.rho_s[i]).unwrap());
        if let Some(u) = &ull {
            worst = worst.max(trace_distance(&u.rho_s[i], &nz.rho_s[i]).unwrap());
            worst = worst.max(trace_distance(&u.rho_s[i], &tcl.rho_s[i]).unwrap());
        }
    }
    worst
}

#[test]
fn second_order_methods_agree_at_short_times() {
    // The three equations share their second-order term; they part at fourth
    // order in the coupling. With the Ohmic preset (sum g^2 ~ 23) that is
    // ~5e-3 by t = 0.1, so agreement is checked at weaker coupling and by scaling.
    let modes = ohmic(255);
    let weak = short_time_spread(&modes.scaled(0.1), true);
    assert!(weak < 1e-4, "{weak}");
    let full = short_time_spread(&modes, false);
    let half = short_time_spread(&modes.scaled(0.5), false);
    let ratio = half / full;
    assert!((1.0 / 20.0..1.0 / 12.0).contains(&ratio), "{ratio}");
}

#[test]
fn strong_lorentzian_coupling_flags_nz2_and_cr_only() {
    // Cheap stand-in for the full preset: the same kind of bath with few modes.
    let modes = common::lorentzian(64, 2.5);
    let problem = Problem::new(modes, plus(), 0.002).unwrap();
    let mut flagged = Vec::new();
    for m in MethodId::ALL {
        if solve(m, &problem, 3.0).unwrap().negative_population {
            flagged.push(m);
        }
    }
    assert!(flagged.contains(&MethodId::Nz2) && flagged.contains(&MethodId::Cr), "{flagged:?}");
    for m in [MethodId::Ull2, MethodId::Tcl2, MethodId::Redfield, MethodId::Lindblad] {
        assert!(!flagged.contains(&m), "{flagged:?}");
    }
}

#[test]
fn invalid_problems_are_rejected() {
    let modes = ohmic(4);
    assert!(Problem::new(modes.clone(), plus(), 0.0).is_err());
    assert!(Problem::new(modes.clone(), plus(), f64::NAN).is_err());
    assert!(Problem::new(modes.clone(), ComplexMatrix::from_real_diagonal(&[0.5, 0.6]), 0.01).is_err());
    assert!(Problem::with_b_width(modes, plus(), 0.01, -1.0).is_err());
}
