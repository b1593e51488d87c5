use std::time::Instant;

use chiunfold_core::exact::{evolve_exact, step_count, ExactSnapshot, PureState};
use chiunfold_core::mesolve::{propagator, MethodId, Problem, NEGATIVE_POPULATION_TOL};
use chiunfold_core::opalg::{min_eigenvalue, trace_distance, ComplexMatrix};
use chiunfold_core::C64;

use crate::config::{ConfigError, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("exact reference failed: {0}")]
    Exact(chiunfold_core::Error),
}

/// One emitted line of a method CSV.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub t: f64,
    pub rho11: f64,
    pub coherence: f64,
    pub chi_norm: f64,
    pub dhs_chi: f64,
    pub acc_dhs_chi: f64,
    pub td_state: f64,
    pub acc_td_state: f64,
    pub neg_pop: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactRow {
    pub t: f64,
    pub rho11: f64,
    pub coherence: f64,
    pub chi_norm: f64,
    pub bath_td_from_initial: f64,
}

#[derive(Clone, Debug)]
pub struct MethodReport {
    pub method: MethodId,
    /// Rows on the emission grid.
    pub rows: Vec<Row>,
    /// `(||chi||, D_HS)` at every step that was reached.
    pub chi_series: Vec<(f64, f64)>,
    pub acc_dhs_chi: f64,
    pub acc_td_state: f64,
    pub negative_population: bool,
    pub min_eigenvalue: f64,
    pub wall_clock_s: f64,
    pub error: Option<String>,
}

/// A maximal run of grid points on which ranking methods by
/// `| ||chi^M|| - ||chi^EX|| |` disagrees with ranking them by `D_HS(chi^M, chi^EX)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InconsistencyWindow {
    pub t_start: f64,
    pub t_end: f64,
    /// Method pairs `(a, b)` where `a` looks closer by norm but is farther by distance.
    pub pairs: Vec<(MethodId, MethodId)>,
}

#[derive(Clone, Debug)]
pub struct ScenarioResult {
    pub config: RunConfig,
    pub exact_rows: Vec<ExactRow>,
    pub exact_wall_clock_s: f64,
    pub methods: Vec<MethodReport>,
    pub windows: Vec<InconsistencyWindow>,
}

impl ScenarioResult {
    pub fn report(&self, m: MethodId) -> Option<&MethodReport> {
        self.methods.iter().find(|r| r.method == m)
    }

    pub fn failed(&self) -> bool {
        self.methods.iter().any(|r| r.error.is_some())
    }
}

fn emitted(i: usize, steps: usize, stride: usize) -> bool {
    i % stride == 0 || i == steps
}

fn populations(rho: &ComplexMatrix) -> (f64, f64) {
    (rho[(1, 1)].re, rho[(0, 1)].norm())
}

/// Exact reference once, then every method (in parallel) against it.
pub fn run_scenario(config: &RunConfig) -> Result<ScenarioResult, RunError> {
    config.validate()?;
    let modes = config.mode_set()?;
    let steps = step_count(config.dt, config.t_final).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let problem = Problem::with_b_width(modes.clone(), config.initial_state.density(), config.dt, config.b_width())
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;

    let start = Instant::now();
    let (a, b) = config.initial_state.amplitudes();
    let psi0 = PureState::product(C64::new(a, 0.0), C64::new(b, 0.0), config.modes).map_err(RunError::Exact)?;
    let traj = evolve_exact(&modes, &psi0, config.dt, config.t_final, config.exact_scheme.into()).map_err(RunError::Exact)?;
    let snapshots = traj
        .iter()
        .map(|psi| ExactSnapshot::new(psi, &modes, problem.basis()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(RunError::Exact)?;
    drop(traj);
    let mut exact_rows = Vec::new();
    for (i, snap) in snapshots.iter().enumerate() {
        if emitted(i, steps, config.stride) {
            let (rho11, coherence) = populations(snap.rho_s());
            exact_rows.push(ExactRow {
                t: i as f64 * config.dt,
                rho11,
                coherence,
                chi_norm: snap.chi_norm(),
                bath_td_from_initial: snap.bath_td_from_initial().map_err(RunError::Exact)?,
            });
        }
    }
    let exact_wall_clock_s = start.elapsed().as_secs_f64();
    log::info!("exact reference: {} steps in {exact_wall_clock_s:.1} s", steps);

    let methods: Vec<MethodReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .methods
            .iter()
            .map(|&m| {
                let (problem, snapshots) = (&problem, &snapshots);
                scope.spawn(move || run_method(m, problem, snapshots, steps, config.stride))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("method thread panicked")).collect()
    });
    let exact_norms: Vec<f64> = snapshots.iter().map(|s| s.chi_norm()).collect();
    let windows = inconsistency_windows(&methods, &exact_norms, config.dt);
    Ok(ScenarioResult {
        config: config.clone(),
        exact_rows,
        exact_wall_clock_s,
        methods,
        windows,
    })
}

fn run_method(method: MethodId, problem: &Problem, snapshots: &[ExactSnapshot], steps: usize, stride: usize) -> MethodReport {
    let start = Instant::now();
    let mut report = MethodReport {
        method,
        rows: Vec::new(),
        chi_series: Vec::with_capacity(steps + 1),
        acc_dhs_chi: 0.0,
        acc_td_state: 0.0,
        negative_population: false,
        min_eigenvalue: f64::INFINITY,
        wall_clock_s: 0.0,
        error: None,
    };
    if let Err(e) = drive(method, problem, snapshots, steps, stride, &mut report) {
        log::error!("{method}: {e}");
        report.error = Some(e.with_method(method).to_string());
    }
    report.wall_clock_s = start.elapsed().as_secs_f64();
    eprintln!(
        "{method}: {:.1} s, acc_dhs_chi {:.6e}, acc_td_state {:.6e}{}{}",
        report.wall_clock_s,
        report.acc_dhs_chi,
        report.acc_td_state,
        if report.negative_population { ", negative population" } else { "" },
        report.error.as_deref().map(|e| format!(", FAILED: {e}")).unwrap_or_default(),
    );
    report
}

fn drive(
    method: MethodId,
    problem: &Problem,
    snapshots: &[ExactSnapshot],
    steps: usize,
    stride: usize,
    report: &mut MethodReport,
) -> chiunfold_core::Result<()> {
    let dt = problem.dt();
    let mut p = propagator(method, problem)?;
    let mut prev: Option<(f64, f64)> = None;
    for (i, snap) in snapshots.iter().enumerate().take(steps + 1) {
        if i > 0 {
            p.step()?;
        }
        let rho = &p.state().rho_s;
        let td = trace_distance(rho, snap.rho_s())?;
        let (chi_norm, dhs) = p.chi_metrics(snap)?;
        if let Some((d0, t0)) = prev {
            report.acc_dhs_chi += 0.5 * dt * (d0 + dhs);
            report.acc_td_state += 0.5 * dt * (t0 + td);
        }
        prev = Some((dhs, td));
        report.chi_series.push((chi_norm, dhs));
        let e = min_eigenvalue(rho)?;
        report.min_eigenvalue = report.min_eigenvalue.min(e);
        let neg_pop = e < -NEGATIVE_POPULATION_TOL;
        report.negative_population |= neg_pop;
        if emitted(i, steps, stride) {
            let (rho11, coherence) = populations(rho);
            report.rows.push(Row {
                t: i as f64 * dt,
                rho11,
                coherence,
                chi_norm,
                dhs_chi: dhs,
                acc_dhs_chi: report.acc_dhs_chi,
                td_state: td,
                acc_td_state: report.acc_td_state,
                neg_pop,
            });
        }
    }
    Ok(())
}

/// Grid points where some pair of methods is ordered one way by the norm gap
/// and the other way by the distance, merged into maximal windows.
pub fn inconsistency_windows(methods: &[MethodReport], exact_norms: &[f64], dt: f64) -> Vec<InconsistencyWindow> {
    let mut windows: Vec<InconsistencyWindow> = Vec::new();
    let mut open: Option<InconsistencyWindow> = None;
    for (i, &ex) in exact_norms.iter().enumerate() {
        let mut pairs = Vec::new();
        for (ai, a) in methods.iter().enumerate() {
            for b in &methods[ai + 1..] {
                let (Some(&(na, da)), Some(&(nb, db))) = (a.chi_series.get(i), b.chi_series.get(i)) else {
                    continue;
                };
                let (ga, gb) = ((na - ex).abs(), (nb - ex).abs());
                let scale = 1e-12 * (da + db + ga + gb);
                if (ga - gb).abs() <= scale || (da - db).abs() <= scale {
                    continue;
                }
                if ga < gb && da > db {
                    pairs.push((a.method, b.method));
                } else if gb < ga && db > da {
                    pairs.push((b.method, a.method));
                }
            }
        }
        let t = i as f64 * dt;
        match (&mut open, pairs.is_empty()) {
            (Some(w), false) => {
                w.t_end = t;
                for p in pairs {
                    if !w.pairs.contains(&p) {
                        w.pairs.push(p);
                    }
                }
            }
            (Some(_), true) => windows.push(open.take().expect("window is open")),
            (None, false) => {
                open = Some(InconsistencyWindow {
                    t_start: t,
                    t_end: t,
                    pairs,
                })
            }
            (None, true) => {}
        }
    }
    windows.extend(open);
    windows
}
