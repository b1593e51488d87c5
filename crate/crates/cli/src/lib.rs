//! Scenario runner for the correlation-unfolding experiments: presets, the
//! exact-vs-approximate metric loop, and CSV/JSON output.

pub mod config;
pub mod emit;
pub mod runner;

pub use config::{ConfigError, Preset, RunConfig};
pub use runner::{run_scenario, RunError, ScenarioResult};
