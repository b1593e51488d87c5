use std::path::PathBuf;
use std::process::ExitCode;

use chiunfold::config::{Preset, RunConfig, SMALL_MODES};
use chiunfold::{emit, run_scenario, RunError};
use chiunfold_core::mesolve::MethodId;
use clap::Parser;

/// Exact vs approximate master equations for a qubit in a two-level-system bath.
#[derive(Parser, Debug)]
#[command(name = "chiunfold", version, about)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["config", "preset"])))]
struct Cli {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in scenario: fig1 (Ohmic) or fig2 (Lorentzian).
    #[arg(long)]
    preset: Option<Preset>,
    /// Comma-separated method list, e.g. ULL2,TCL2,R.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Smoke mode with a 16-mode bath.
    #[arg(long)]
    small: bool,
    /// Accepted for interface stability; the dynamics is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    stride: Option<usize>,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_SOLVER: u8 = 3;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_CONFIG) } else { ExitCode::SUCCESS };
        }
    };
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if let Some(seed) = cli.seed {
        log::info!("seed {seed} ignored: no stochastic component");
    }
    let result = match run_scenario(&config) {
        Ok(r) => r,
        Err(RunError::Config(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_SOLVER);
        }
    };
    if let Err(e) = emit::emit(&result, &config.out_dir) {
        eprintln!("error: cannot write {}: {e}", config.out_dir.display());
        return ExitCode::from(EXIT_CONFIG);
    }
    if result.failed() {
        return ExitCode::from(EXIT_SOLVER);
    }
    ExitCode::SUCCESS
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut config = match (&cli.config, cli.preset) {
        (Some(path), _) => RunConfig::load(path).map_err(|e| e.to_string())?,
        (None, Some(p)) => RunConfig::preset(p),
        (None, None) => unreachable!("clap enforces a source"),
    };
    if let Some(names) = &cli.methods {
        config.methods = names
            .iter()
            .map(|s| s.parse::<MethodId>().map_err(|e| format!("{e}: {s:?}")))
            .collect::<Result<_, _>>()?;
    }
    if let Some(out) = &cli.out {
        config.out_dir = out.clone();
    }
    if cli.small {
        config.modes = SMALL_MODES;
    }
    if let Some(t) = cli.t_final {
        config.t_final = t;
    }
    if let Some(s) = cli.stride {
        config.stride = s;
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}
