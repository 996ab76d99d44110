use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use wallspace_core::cnk::{MAX_SET_POINTS, OVERFLOW_T};
use wallspace_core::crofton::DEFAULT_T_VALUES;
use wallspace_core::{Error, IntegrationConfig, Method, MAX_DIM, MIN_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    EstimateC,
    VerifyCrofton,
    Cnk,
    SweepUnbounded,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::EstimateC => "estimate-c",
            Command::VerifyCrofton => "verify-crofton",
            Command::Cnk => "cnk",
            Command::SweepUnbounded => "sweep-unbounded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodChoice {
    /// Quadrature where it is available and deterministic estimates suffice,
    /// Monte Carlo otherwise.
    Auto,
    Quadrature,
    MonteCarlo,
}

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_NODES: usize = 512;
pub const DEFAULT_PAIRS: usize = 10;
pub const DEFAULT_TRANSFORMS: usize = 100;
pub const DEFAULT_INSTANCES: usize = 20;
pub const DEFAULT_CONFIGS: usize = 200;
pub const DEFAULT_PROBES: usize = 64;
pub const DEFAULT_TRIPLES: usize = 1000;
pub const DEFAULT_T_MAX: f64 = 300.0;
pub const DEFAULT_HILBERT_POINTS: usize = 5;

/// Everything that determines a run. Serialized verbatim into the report;
/// the output path and thread count do not affect results and are left out.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub seed: u64,
    pub method: MethodChoice,
    pub samples: u64,
    pub nodes: usize,
    pub t_grid: Vec<f64>,
    pub eps_side: f64,
    pub r_margin: f64,
    pub pairs: usize,
    pub transforms: usize,
    pub instances: usize,
    pub configs: usize,
    pub points: Option<usize>,
    pub probes: usize,
    pub triples: usize,
    pub t_max: f64,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub embed_duration: bool,
}

impl RunConfig {
    pub fn new(command: Command, n: usize) -> Self {
        let base = IntegrationConfig::default();
        Self {
            command,
            n,
            seed: 0,
            method: MethodChoice::Auto,
            samples: DEFAULT_SAMPLES,
            nodes: DEFAULT_NODES,
            t_grid: DEFAULT_T_VALUES.to_vec(),
            eps_side: base.eps_side,
            r_margin: base.r_margin,
            pairs: DEFAULT_PAIRS,
            transforms: DEFAULT_TRANSFORMS,
            instances: DEFAULT_INSTANCES,
            configs: DEFAULT_CONFIGS,
            points: None,
            probes: DEFAULT_PROBES,
            triples: DEFAULT_TRIPLES,
            t_max: DEFAULT_T_MAX,
            format: Format::Json,
            out: None,
            threads: None,
            embed_duration: false,
        }
    }

    /// Method for the `F = c·t` fit. The row-level statistical suites always
    /// use Monte Carlo, since they compare error bars.
    pub fn fit_method(&self) -> Method {
        match self.method {
            MethodChoice::Quadrature => Method::Quadrature,
            MethodChoice::MonteCarlo => Method::MonteCarlo,
            MethodChoice::Auto if self.n <= 3 && self.command != Command::VerifyCrofton => Method::Quadrature,
            MethodChoice::Auto => Method::MonteCarlo,
        }
    }

    pub fn integration(&self, method: Method) -> IntegrationConfig {
        IntegrationConfig {
            method,
            samples: self.samples,
            nodes: self.nodes,
            seed: self.seed,
            r_margin: self.r_margin,
            eps_side: self.eps_side,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(MIN_DIM..=MAX_DIM).contains(&self.n) {
            return Err(Error::UnsupportedDimension(self.n).to_string());
        }
        if self.t_grid.is_empty() {
            return Err("--t-grid must not be empty".into());
        }
        if let Some(t) = self.t_grid.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
            return Err(format!("--t-grid values must be finite and positive, got {t}"));
        }
        if self.t_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err("--t-grid must be strictly increasing".into());
        }
        for (name, value) in [
            ("--pairs", self.pairs),
            ("--transforms", self.transforms),
            ("--instances", self.instances),
            ("--configs", self.configs),
            ("--triples", self.triples),
        ] {
            if value == 0 {
                return Err(format!("{name} must be at least 1"));
            }
        }
        if let Some(m) = self.points {
            if !(2..=MAX_SET_POINTS).contains(&m) {
                return Err(format!("--points must lie in 2..={MAX_SET_POINTS}, got {m}"));
            }
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(format!("--t-max must be finite and positive, got {}", self.t_max));
        }
        if self.t_max > OVERFLOW_T {
            return Err(Error::Overflow { t: self.t_max }.to_string());
        }
        if self.threads == Some(0) {
            return Err("--threads must be at least 1".into());
        }
        let methods: &[Method] = match self.command {
            Command::EstimateC => &[self.fit_method()],
            Command::VerifyCrofton => &[self.fit_method(), Method::MonteCarlo],
            Command::Cnk => &[self.fit_method(), Method::MonteCarlo],
            Command::SweepUnbounded => &[],
        };
        for &m in methods {
            self.integration(m).validate(self.n).map_err(|e| e.to_string())?;
        }
        Ok(())
    }
}
