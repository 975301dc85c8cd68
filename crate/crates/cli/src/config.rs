//! Run configuration, read from a single TOML file.

use std::path::{Path, PathBuf};

use gpp_branch::{DomainPolicy, Family};
use gpp_solvers::SolverConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    Sweep,
    Limits,
    Thresholds,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// State computed by `solve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    #[default]
    Minimizer,
    MountainPass,
    Choquard,
    ThomasFermi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Auto {
    Auto,
}

/// Box radius: a number, or `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoxRadius {
    Fixed(f64),
    Auto(Auto),
}

impl Default for BoxRadius {
    fn default() -> Self {
        BoxRadius::Auto(Auto::Auto)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    pub r_max: BoxRadius,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { n: 2048, r_max: BoxRadius::default() }
    }
}

impl GridConfig {
    pub fn policy(&self) -> DomainPolicy {
        let r_max = match self.r_max {
            BoxRadius::Fixed(r) => Some(r),
            BoxRadius::Auto(_) => None,
        };
        DomainPolicy { n: self.n, r_max, ..DomainPolicy::default() }
    }

    /// Radius for solves whose extent does not depend on the mass.
    pub fn fixed_or(&self, auto: f64) -> f64 {
        match self.r_max {
            BoxRadius::Fixed(r) => r,
            BoxRadius::Auto(_) => auto,
        }
    }
}

fn default_families() -> Vec<Family> {
    vec![Family::Minimizer]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_parallelism() -> usize {
    1
}

fn default_spot_checks() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub alpha: f64,
    pub rho: Option<f64>,
    pub rho_list: Option<Vec<f64>>,
    #[serde(default)]
    pub target: Target,
    #[serde(default = "default_families")]
    pub families: Vec<Family>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub format: Format,
    /// Worker threads for independent sweeps.
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    /// Seed of the random fields used by `verify`.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_spot_checks")]
    pub spot_checks: usize,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| LabError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(LabError::Config(m));
        if !(self.alpha > 0.0 && self.alpha < 3.0) {
            return bad(format!("alpha must lie in (0, 3), got {}", self.alpha));
        }
        self.solver.validate().map_err(|e| LabError::Config(e.to_string()))?;
        self.grid.policy().validate().map_err(|e| LabError::Config(e.to_string()))?;
        if self.parallelism == 0 {
            return bad("parallelism must be at least 1".into());
        }
        if let Some(r) = self.rho {
            if !(r.is_finite() && r > 0.0) {
                return bad(format!("rho must be positive, got {r}"));
            }
        }
        if let Some(list) = &self.rho_list {
            if list.is_empty() || list.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                return bad("rho_list must hold positive masses".into());
            }
            if list.windows(2).any(|p| p[1] <= p[0]) {
                return bad("rho_list must be strictly increasing".into());
            }
        }
        match self.command {
            Command::Solve if self.rho.is_none() && self.target != Target::ThomasFermi => bad("solve needs rho".into()),
            Command::Sweep | Command::Limits if self.rho_list.is_none() => {
                bad(format!("{:?} needs rho_list", self.command).to_lowercase())
            }
            Command::Sweep if self.families.is_empty() => bad("sweep needs at least one family".into()),
            _ => Ok(()),
        }
    }
}

/// A parsed configuration with the hash of its file contents.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub hash: String,
}

impl LoadedConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        Ok(Self { config: RunConfig::parse(text)?, hash: config_hash(text) })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
        Self::from_text(&text)
    }
}

/// Hex SHA-256 of the configuration text.
pub fn config_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}
