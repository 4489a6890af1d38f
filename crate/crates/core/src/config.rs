//! TOML run configuration.
//!
//! ```toml
//! [constraints]
//! k1 = 0
//! k2 = "10"
//! k3 = "0.525"
//!
//! [weights]
//! none = "0"
//! closed_only = "1"
//! single_open = "3"
//! multi_open = "6"
//! discourse_lambda = "1"
//!
//! [candidates]
//! allow_sentence_deletion = false
//!
//! [solver]
//! oracle_limit = 24
//! ```
//!
//! Rational values are decimal or `p/q` strings (integers may be bare) and
//! are parsed exactly. Every key is optional; the constraint bounds must be
//! supplied here or on the command line before a model can be built.

use std::path::Path;

use serde::Deserialize;

use crate::cost_model::CostWeights;
use crate::ilp_model::ModelConfig;
use crate::rational::{Exact, Rational};
use crate::solver::DEFAULT_ORACLE_LIMIT;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("missing constraint bound `{0}` (set constraints.{0} or pass --{0})")]
    Missing(&'static str),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    constraints: RawConstraints,
    #[serde(default)]
    weights: RawWeights,
    #[serde(default)]
    candidates: RawCandidates,
    #[serde(default)]
    solver: RawSolver,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstraints {
    k1: Option<i64>,
    k2: Option<Exact>,
    k3: Option<Exact>,
    per_sentence_exclusivity: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeights {
    none: Option<Exact>,
    closed_only: Option<Exact>,
    single_open: Option<Exact>,
    multi_open: Option<Exact>,
    discourse_lambda: Option<Exact>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCandidates {
    allow_sentence_deletion: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    oracle_limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub k1: Option<i64>,
    pub k2: Option<Rational>,
    pub k3: Option<Rational>,
    pub per_sentence_exclusivity: bool,
    pub weights: CostWeights,
    pub allow_sentence_deletion: bool,
    pub oracle_limit: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            k1: None,
            k2: None,
            k3: None,
            per_sentence_exclusivity: true,
            weights: CostWeights::default(),
            allow_sentence_deletion: false,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

impl Settings {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let defaults = Settings::default();
        let w = defaults.weights;
        let pick = |v: Option<Exact>, d: Rational| v.map_or(d, |e| e.0);
        Ok(Settings {
            k1: raw.constraints.k1,
            k2: raw.constraints.k2.map(|e| e.0),
            k3: raw.constraints.k3.map(|e| e.0),
            per_sentence_exclusivity: raw
                .constraints
                .per_sentence_exclusivity
                .unwrap_or(defaults.per_sentence_exclusivity),
            weights: CostWeights {
                none: pick(raw.weights.none, w.none),
                closed_only: pick(raw.weights.closed_only, w.closed_only),
                single_open: pick(raw.weights.single_open, w.single_open),
                multi_open: pick(raw.weights.multi_open, w.multi_open),
                discourse_lambda: pick(raw.weights.discourse_lambda, w.discourse_lambda),
            },
            allow_sentence_deletion: raw
                .candidates
                .allow_sentence_deletion
                .unwrap_or(defaults.allow_sentence_deletion),
            oracle_limit: raw.solver.oracle_limit.unwrap_or(defaults.oracle_limit),
        })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn model_config(&self) -> Result<ModelConfig, ConfigError> {
        Ok(ModelConfig {
            k1: self.k1.ok_or(ConfigError::Missing("k1"))?,
            k2: self.k2.clone().ok_or(ConfigError::Missing("k2"))?,
            k3: self.k3.clone().ok_or(ConfigError::Missing("k3"))?,
            per_sentence_exclusivity: self.per_sentence_exclusivity,
        })
    }
}
