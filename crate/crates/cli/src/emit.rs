use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::runner::{ExactRow, Row, ScenarioResult};

pub const METHOD_HEADER: &str = "t,rho11,coherence,chi_norm,dhs_chi,acc_dhs_chi,td_state,acc_td_state,neg_pop_flag";
pub const EXACT_HEADER: &str = "t,rho11,coherence,chi_norm,bath_td_from_initial";
/// Windows listed in `summary.json`; the total count is always reported.
pub const MAX_REPORTED_WINDOWS: usize = 50;

/// C `printf("%.12e")`: twelve mantissa digits, signed exponent of at least two digits.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

/// The value a reader of the CSV gets back.
pub fn as_written(x: f64) -> f64 {
    sci(x).parse().unwrap_or(x)
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn method_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(140 * (rows.len() + 1));
    out.push_str(METHOD_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [
            r.t,
            r.rho11,
            r.coherence,
            r.chi_norm,
            r.dhs_chi,
            r.acc_dhs_chi,
            r.td_state,
            r.acc_td_state,
            flag(r.neg_pop),
        ];
        line(&mut out, &cols);
    }
    out
}

pub fn exact_csv(rows: &[ExactRow]) -> String {
    let mut out = String::with_capacity(100 * (rows.len() + 1));
    out.push_str(EXACT_HEADER);
    out.push('\n');
    for r in rows {
        line(&mut out, &[r.t, r.rho11, r.coherence, r.chi_norm, r.bath_td_from_initial]);
    }
    out
}

fn line(out: &mut String, cols: &[f64]) {
    for (i, &c) in cols.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", sci(c));
    }
    out.push('\n');
}

pub fn summary(result: &ScenarioResult) -> Value {
    let mut methods = Map::new();
    for r in &result.methods {
        methods.insert(
            r.method.name().to_owned(),
            json!({
                "acc_dhs_chi": r.rows.last().map(|x| as_written(x.acc_dhs_chi)),
                "acc_td_state": r.rows.last().map(|x| as_written(x.acc_td_state)),
                "negative_population": r.negative_population,
                "min_eigenvalue": r.min_eigenvalue,
                "wall_clock_s": r.wall_clock_s,
                "error": r.error,
            }),
        );
    }
    let windows: Vec<Value> = result
        .windows
        .iter()
        .take(MAX_REPORTED_WINDOWS)
        .map(|w| {
            json!({
                "t_start": w.t_start,
                "t_end": w.t_end,
                "pairs": w.pairs.iter().map(|(a, b)| format!("{a}<{b}")).collect::<Vec<_>>(),
            })
        })
        .collect();
    let longest = result
        .windows
        .iter()
        .max_by(|a, b| (a.t_end - a.t_start).total_cmp(&(b.t_end - b.t_start)))
        .map(|w| json!({ "t_start": w.t_start, "t_end": w.t_end }));
    json!({
        "config": result.config,
        "exact": { "wall_clock_s": result.exact_wall_clock_s },
        "methods": methods,
        "flags": {
            "negative_population": result
                .methods
                .iter()
                .filter(|r| r.negative_population)
                .map(|r| r.method.name())
                .collect::<Vec<_>>(),
            "failed": result
                .methods
                .iter()
                .filter(|r| r.error.is_some())
                .map(|r| r.method.name())
                .collect::<Vec<_>>(),
        },
        "norm_distance_inconsistency": {
            "detected": !result.windows.is_empty(),
            "window_count": result.windows.len(),
            "longest": longest,
            "windows": windows,
        },
    })
}

/// `<METHOD>.csv` per method, `exact.csv` and `summary.json` under `dir`.
pub fn emit(result: &ScenarioResult, dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for r in &result.methods {
        fs::write(dir.join(format!("{}.csv", r.method.name())), method_csv(&r.rows))?;
    }
    fs::write(dir.join("exact.csv"), exact_csv(&result.exact_rows))?;
    let text = serde_json::to_string_pretty(&summary(result)).map_err(io::Error::other)?;
    fs::write(dir.join("summary.json"), text + "\n")
}
