use std::path::{Path, PathBuf};

use chiunfold_core::exact::ExactScheme;
use chiunfold_core::mesolve::MethodId;
use chiunfold_core::model::{discretize, ModeSet, SpectralDensity};
use chiunfold_core::opalg::{qubit, ComplexMatrix};
use serde::{Deserialize, Serialize};

/// Default horizon of both figure presets, in units of `1/omega0`.
pub const DEFAULT_T_FINAL: f64 = 3.0;
pub const DEFAULT_STRIDE: usize = 20;
/// Bath size of `--small` runs.
pub const SMALL_MODES: usize = 16;
/// Lorentzian width of the second preset, with `lambda = 0.2 gamma`.
pub const FIG2_GAMMA: f64 = 2.5;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Spectral {
    Ohmic { eta: f64, omega_c: f64 },
    Lorentzian { gamma: f64, lambda: f64 },
}

impl Spectral {
    pub fn density(&self) -> Result<SpectralDensity, ConfigError> {
        let j = match *self {
            Spectral::Ohmic { eta, omega_c } => SpectralDensity::ohmic(eta, omega_c),
            Spectral::Lorentzian { gamma, lambda } => SpectralDensity::lorentzian(gamma, lambda),
        };
        j.map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    Eigenprop,
    Rk4,
}

impl From<Scheme> for ExactScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Eigenprop => ExactScheme::Eigenprop,
            Scheme::Rk4 => ExactScheme::Rk4,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    /// `(|0> + |1>)/sqrt(2)`
    #[default]
    Plus,
    Excited,
}

impl InitialState {
    pub fn amplitudes(&self) -> (f64, f64) {
        match self {
            InitialState::Plus => (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
            InitialState::Excited => (0.0, 1.0),
        }
    }

    pub fn density(&self) -> ComplexMatrix {
        match self {
            InitialState::Plus => qubit::plus_state(),
            InitialState::Excited => qubit::excited_projector(),
        }
    }
}

/// A full scenario. JSON keys are the snake_case field names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub spectral: Spectral,
    pub modes: usize,
    pub delta_omega: f64,
    pub omega0: f64,
    pub dt: f64,
    #[serde(default = "default_t_final")]
    pub t_final: f64,
    /// Width of the regularized delta function; the mode spacing when absent.
    #[serde(default)]
    pub b_width: Option<f64>,
    /// All seven when absent.
    #[serde(with = "method_names", default = "default_methods")]
    pub methods: Vec<MethodId>,
    #[serde(default)]
    pub exact_scheme: Scheme,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default = "default_stride")]
    pub stride: usize,
}

fn default_t_final() -> f64 {
    DEFAULT_T_FINAL
}

fn default_methods() -> Vec<MethodId> {
    MethodId::ALL.to_vec()
}

fn default_stride() -> usize {
    DEFAULT_STRIDE
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

mod method_names {
    use chiunfold_core::mesolve::MethodId;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[MethodId], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|m| m.name()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<MethodId>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(|e| D::Error::custom(format!("{e}: {s:?}"))))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            _ => Err(format!("unknown preset {s:?} (expected fig1 or fig2)")),
        }
    }
}

impl RunConfig {
    pub fn preset(p: Preset) -> Self {
        let (spectral, delta_omega) = match p {
            Preset::Fig1 => (
                Spectral::Ohmic {
                    eta: 1.0,
                    omega_c: 10.0,
                },
                0.1,
            ),
            Preset::Fig2 => (
                Spectral::Lorentzian {
                    gamma: FIG2_GAMMA,
                    lambda: 0.2 * FIG2_GAMMA,
                },
                0.05,
            ),
        };
        Self {
            spectral,
            modes: 255,
            delta_omega,
            omega0: 1.0,
            dt: 0.0005,
            t_final: DEFAULT_T_FINAL,
            b_width: None,
            methods: MethodId::ALL.to_vec(),
            exact_scheme: Scheme::default(),
            initial_state: InitialState::default(),
            out_dir: default_out_dir(),
            stride: DEFAULT_STRIDE,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let c: Self = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Invalid(m.to_owned()));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt must be positive");
        }
        if !(self.t_final.is_finite() && self.t_final >= self.dt) {
            return bad("t_final must be at least dt");
        }
        if self.methods.is_empty() {
            return bad("methods must not be empty");
        }
        if self.modes < 1 {
            return bad("modes must be at least 1");
        }
        if !(self.delta_omega.is_finite() && self.delta_omega > 0.0) {
            return bad("delta_omega must be positive");
        }
        if !self.omega0.is_finite() {
            return bad("omega0 must be finite");
        }
        if let Some(b) = self.b_width {
            if !(b.is_finite() && b > 0.0) {
                return bad("b_width must be positive");
            }
        }
        if self.stride == 0 {
            return bad("stride must be at least 1");
        }
        self.spectral.density()?;
        Ok(())
    }

    pub fn b_width(&self) -> f64 {
        self.b_width.unwrap_or(self.delta_omega)
    }

    pub fn mode_set(&self) -> Result<ModeSet, ConfigError> {
        discretize(&self.spectral.density()?, self.modes, self.delta_omega, self.omega0)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}
