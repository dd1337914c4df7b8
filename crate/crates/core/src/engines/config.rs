use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Sharing, Variation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Pga,
    Nsga1,
    Nsga2,
    Nsga3,
    Spea,
    Scalar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Pga,
        Algorithm::Nsga1,
        Algorithm::Nsga2,
        Algorithm::Nsga3,
        Algorithm::Spea,
        Algorithm::Scalar,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Pga => "pga",
            Algorithm::Nsga1 => "nsga1",
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Nsga3 => "nsga3",
            Algorithm::Spea => "spea",
            Algorithm::Scalar => "scalar",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| {
                format!(
                    "unknown algorithm '{s}' (expected pga, nsga1, nsga2, nsga3, spea or scalar)"
                )
            })
    }
}

/// Parent selection on shared fitness for NSGA-I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SharedSelection {
    #[default]
    Tournament,
    Proportionate,
}

impl FromStr for SharedSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tournament" => Ok(SharedSelection::Tournament),
            "proportionate" | "roulette" => Ok(SharedSelection::Proportionate),
            other => Err(format!("unknown selection scheme '{other}'")),
        }
    }
}

impl fmt::Display for SharedSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SharedSelection::Tournament => "tournament",
            SharedSelection::Proportionate => "proportionate",
        })
    }
}

/// Everything a run needs besides the problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub population: usize,
    pub generations: usize,
    /// SPEA archive capacity; `None` uses the population size.
    pub archive_size: Option<usize>,
    /// Scalarization weights, one per objective.
    pub weights: Vec<f64>,
    pub variation: Variation,
    pub seed: u64,
    pub sharing: Sharing,
    /// Das–Dennis divisions for NSGA-III.
    pub ref_divisions: usize,
    pub nsga1_selection: SharedSelection,
    /// Evaluation threads; never affects results.
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        RunConfig {
            algorithm,
            population: 10,
            generations: 10,
            archive_size: None,
            weights: vec![1.0, 1.0, 1.0],
            variation: Variation::default(),
            seed,
            sharing: Sharing::default(),
            ref_divisions: 4,
            nsga1_selection: SharedSelection::Tournament,
            jobs: 1,
        }
    }

    pub fn archive_capacity(&self) -> usize {
        self.archive_size.unwrap_or(self.population)
    }

    /// Checks the config against a problem with `objectives` objectives.
    pub fn validate(&self, objectives: usize) -> Result<(), String> {
        if self.population < 2 {
            return Err(format!(
                "population must be at least 2, got {}",
                self.population
            ));
        }
        if self.generations < 1 {
            return Err("generations must be at least 1".into());
        }
        if self.archive_size == Some(0) {
            return Err("archive size must be at least 1".into());
        }
        if self.weights.len() != objectives {
            return Err(format!(
                "expected {objectives} weights, got {}",
                self.weights.len()
            ));
        }
        if self.weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err("weights must be finite and non-negative".into());
        }
        if !self.weights.iter().any(|&w| w > 0.0) {
            return Err("at least one weight must be positive".into());
        }
        let v = &self.variation;
        if !(0.0..=1.0).contains(&v.crossover_rate) {
            return Err("crossover rate must lie in [0, 1]".into());
        }
        if let Some(r) = v.mutation_rate {
            if !(0.0..=1.0).contains(&r) {
                return Err("mutation rate must lie in [0, 1]".into());
            }
        }
        if !(v.crossover_eta >= 0.0 && v.mutation_eta >= 0.0) {
            return Err("distribution indices must be non-negative".into());
        }
        if !(self.sharing.sigma_share > 0.0 && self.sharing.alpha > 0.0) {
            return Err("sigma_share and alpha must be positive".into());
        }
        if self.ref_divisions < 1 {
            return Err("ref divisions must be at least 1".into());
        }
        if self.jobs < 1 {
            return Err("jobs must be at least 1".into());
        }
        Ok(())
    }
}
