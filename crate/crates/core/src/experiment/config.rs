//! Flat `key=value` experiment configuration, shared by config files and
//! command-line flags.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::engines::{Algorithm, RunConfig, SharedSelection};
use crate::evaluator::{AntennaProblem, BenchmarkId, ExternalEvaluator, Problem};
use crate::{Sharing, Variation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, found '{text}'")]
    Syntax { line: usize, text: String },
    #[error("unknown setting '{0}'")]
    UnknownKey(String),
    #[error("invalid value '{value}' for {key}: {reason}")]
    BadValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("missing required setting '{0}'")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

/// Name of the built-in preset: N = 10, G = 10, surrogate evaluator.
pub const SMALL_PRESET: &str = "paper-n10g10";

/// Which objective function a run optimizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvaluatorChoice {
    Surrogate,
    Benchmark(BenchmarkId),
    /// File-exchange evaluator polling the given directory.
    External(PathBuf),
}

impl fmt::Display for EvaluatorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvaluatorChoice::Surrogate => f.write_str("surrogate"),
            EvaluatorChoice::Benchmark(id) => write!(f, "{id}"),
            EvaluatorChoice::External(dir) => write!(f, "external:{}", dir.display()),
        }
    }
}

impl FromStr for EvaluatorChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(dir) = s.strip_prefix("external:") {
            if dir.is_empty() {
                return Err("external evaluator needs a directory, e.g. external:/tmp/cst".into());
            }
            return Ok(EvaluatorChoice::External(PathBuf::from(dir)));
        }
        if s.eq_ignore_ascii_case("surrogate") {
            return Ok(EvaluatorChoice::Surrogate);
        }
        s.parse::<BenchmarkId>()
            .map(EvaluatorChoice::Benchmark)
            .map_err(|_| {
                format!(
                    "unknown evaluator '{s}' (expected surrogate, zdt1, dtlz2 or external:<dir>)"
                )
            })
    }
}

/// A fully resolved experiment: one run of one algorithm on one evaluator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub population: usize,
    pub generations: usize,
    pub seed: u64,
    pub evaluator: EvaluatorChoice,
    /// `None` means weight 1 for every objective.
    pub weights: Option<Vec<f64>>,
    pub sharing: Sharing,
    pub ref_divisions: usize,
    pub archive_size: Option<usize>,
    pub selection: SharedSelection,
    pub variation: Variation,
    pub jobs: usize,
    pub external_timeout: Duration,
}

/// Splits config-file text into `(key, value)` pairs; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: i + 1,
            text: raw.to_string(),
        })?;
        pairs.push((normalize_key(k), v.trim().to_string()));
    }
    Ok(pairs)
}

/// Lower-case with `_` folded to `-`, so `sigma_share` and `sigma-share` agree.
pub fn normalize_key(k: &str) -> String {
    k.trim().to_ascii_lowercase().replace('_', "-")
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse::<T>()
        .map_err(|e| ConfigError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
            reason: e.to_string(),
        })
}

fn optional<T: FromStr>(key: &str, value: &str) -> Result<Option<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    match value.trim() {
        "" | "auto" | "default" => Ok(None),
        v => parse(key, v).map(Some),
    }
}

impl ExperimentConfig {
    /// Builds a config from pairs applied in order, so later pairs override
    /// earlier ones. A `preset` pair is applied before everything else.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self, ConfigError> {
        let mut algorithm = None;
        let mut seed = None;
        let mut cfg = ExperimentConfig {
            algorithm: Algorithm::Scalar,
            population: 10,
            generations: 10,
            seed: 0,
            evaluator: EvaluatorChoice::Surrogate,
            weights: None,
            sharing: Sharing::default(),
            ref_divisions: 4,
            archive_size: None,
            selection: SharedSelection::Tournament,
            variation: Variation::default(),
            jobs: 1,
            external_timeout: ExternalEvaluator::DEFAULT_TIMEOUT,
        };
        let presets = pairs.iter().filter(|(k, _)| normalize_key(k) == "preset");
        let others = pairs.iter().filter(|(k, _)| normalize_key(k) != "preset");
        for (key, value) in presets.chain(others) {
            let key = normalize_key(key);
            let k = key.as_str();
            match k {
                "preset" => {
                    if value.trim() != SMALL_PRESET {
                        return Err(ConfigError::BadValue {
                            key: key.clone(),
                            value: value.clone(),
                            reason: format!("the only preset is {SMALL_PRESET}"),
                        });
                    }
                    cfg.population = 10;
                    cfg.generations = 10;
                    cfg.evaluator = EvaluatorChoice::Surrogate;
                }
                "algorithm" => algorithm = Some(parse::<Algorithm>(k, value)?),
                "population" => cfg.population = parse(k, value)?,
                "generations" => cfg.generations = parse(k, value)?,
                "seed" => seed = Some(parse::<u64>(k, value)?),
                "evaluator" => cfg.evaluator = parse(k, value)?,
                "weights" => {
                    cfg.weights = match value.trim() {
                        "" | "auto" | "default" => None,
                        v => Some(
                            v.split(',')
                                .map(|w| parse::<f64>(k, w))
                                .collect::<Result<_, _>>()?,
                        ),
                    }
                }
                "sigma-share" => cfg.sharing.sigma_share = parse(k, value)?,
                "alpha" => cfg.sharing.alpha = parse(k, value)?,
                "ref-divisions" => cfg.ref_divisions = parse(k, value)?,
                "archive-size" => cfg.archive_size = optional(k, value)?,
                "selection" => cfg.selection = parse(k, value)?,
                "crossover-rate" => cfg.variation.crossover_rate = parse(k, value)?,
                "crossover-eta" => cfg.variation.crossover_eta = parse(k, value)?,
                "mutation-rate" => cfg.variation.mutation_rate = optional(k, value)?,
                "mutation-eta" => cfg.variation.mutation_eta = parse(k, value)?,
                "jobs" => cfg.jobs = parse(k, value)?,
                "external-timeout" => {
                    let secs: f64 = parse(k, value)?;
                    if !(secs > 0.0 && secs.is_finite()) {
                        return Err(ConfigError::BadValue {
                            key: key.clone(),
                            value: value.clone(),
                            reason: "must be a positive number of seconds".into(),
                        });
                    }
                    cfg.external_timeout = Duration::from_secs_f64(secs);
                }
                _ => return Err(ConfigError::UnknownKey(key)),
            }
        }
        cfg.algorithm = algorithm.ok_or(ConfigError::Missing("algorithm"))?;
        cfg.seed = seed.ok_or(ConfigError::Missing("seed"))?;
        cfg.run_config(cfg.objectives())
            .validate(cfg.objectives())
            .map_err(ConfigError::Invalid)?;
        Ok(cfg)
    }

    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        Self::from_pairs(&parse_pairs(text)?)
    }

    /// Number of objectives of the selected evaluator.
    pub fn objectives(&self) -> usize {
        match &self.evaluator {
            EvaluatorChoice::Benchmark(BenchmarkId::Zdt1) => 2,
            _ => 3,
        }
    }

    pub fn run_config(&self, objectives: usize) -> RunConfig {
        RunConfig {
            algorithm: self.algorithm,
            population: self.population,
            generations: self.generations,
            archive_size: self.archive_size,
            weights: self
                .weights
                .clone()
                .unwrap_or_else(|| vec![1.0; objectives]),
            variation: self.variation,
            seed: self.seed,
            sharing: self.sharing,
            ref_divisions: self.ref_divisions,
            nsga1_selection: self.selection,
            jobs: self.jobs,
        }
    }

    pub fn build_problem(&self) -> Box<dyn Problem> {
        match &self.evaluator {
            EvaluatorChoice::Surrogate => Box::new(AntennaProblem::surrogate()),
            EvaluatorChoice::Benchmark(id) => id.problem(),
            EvaluatorChoice::External(dir) => Box::new(AntennaProblem::external(
                ExternalEvaluator::new(dir).with_timeout(self.external_timeout),
            )),
        }
    }

    /// Canonical `key=value` text; [`ExperimentConfig::from_text`] reads it back.
    pub fn to_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "auto".into());
        let lines = [
            ("algorithm", self.algorithm.to_string()),
            ("population", self.population.to_string()),
            ("generations", self.generations.to_string()),
            ("seed", self.seed.to_string()),
            ("evaluator", self.evaluator.to_string()),
            (
                "weights",
                opt(self.weights.as_ref().map(|w| {
                    w.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })),
            ),
            ("sigma-share", self.sharing.sigma_share.to_string()),
            ("alpha", self.sharing.alpha.to_string()),
            ("ref-divisions", self.ref_divisions.to_string()),
            (
                "archive-size",
                opt(self.archive_size.map(|a| a.to_string())),
            ),
            ("selection", self.selection.to_string()),
            ("crossover-rate", self.variation.crossover_rate.to_string()),
            ("crossover-eta", self.variation.crossover_eta.to_string()),
            (
                "mutation-rate",
                opt(self.variation.mutation_rate.map(|m| m.to_string())),
            ),
            ("mutation-eta", self.variation.mutation_eta.to_string()),
            ("jobs", self.jobs.to_string()),
            (
                "external-timeout",
                self.external_timeout.as_secs_f64().to_string(),
            ),
        ];
        lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}
