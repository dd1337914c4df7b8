//! Objective evaluation. Every engine sees a [`Problem`]: bounds, repair,
//! sampling and a pure `evaluate` that may be called from several threads.

mod antenna;
pub mod benchmark;
pub mod external;
mod response;
pub mod surrogate;

use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genome::GenomeError;

pub use antenna::{AntennaBackend, AntennaProblem};
pub use benchmark::{benchmark_evaluate, BenchmarkId, Dtlz2, Zdt1};
pub use external::ExternalEvaluator;
pub use response::{
    objectives_from_response, parse_s11_table, FrequencyResponse, TARGET_FREQUENCIES_GHZ,
};
pub use surrogate::{patch_resonance, ring_resonance, surrogate_response, SurrogateConfig};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("expected {expected} decision variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("target frequency {0} GHz lies outside the sampled span")]
    OutOfRange(f64),
    #[error("malformed S11 table: {0}")]
    MalformedTable(String),
    #[error("no result file {path} within {seconds:.1} s")]
    Timeout { path: String, seconds: f64 },
    #[error("exchange I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Genome(#[from] GenomeError),
}

/// Reflection coefficient in dB at 2.4, 3.6 and 5.2 GHz (minimized).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub s11_24: f64,
    pub s11_36: f64,
    pub s11_52: f64,
}

impl ObjectiveVector {
    pub fn to_vec(&self) -> Vec<f64> {
        vec![self.s11_24, self.s11_36, self.s11_52]
    }

    pub fn from_slice(v: &[f64]) -> Option<Self> {
        match *v {
            [s11_24, s11_36, s11_52] => Some(ObjectiveVector {
                s11_24,
                s11_36,
                s11_52,
            }),
            _ => None,
        }
    }
}

/// A minimization problem over a box-bounded real vector.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;

    fn dimension(&self) -> usize;

    fn num_objectives(&self) -> usize;

    fn lower_bounds(&self) -> &[f64];

    fn upper_bounds(&self) -> &[f64];

    fn gene_names(&self) -> Vec<String> {
        (1..=self.dimension()).map(|i| format!("x{i}")).collect()
    }

    fn objective_names(&self) -> Vec<String> {
        (1..=self.num_objectives())
            .map(|i| format!("f{i}"))
            .collect()
    }

    /// Maps any vector onto the feasible set.
    fn repair(&self, x: &[f64]) -> Result<Vec<f64>, GenomeError> {
        Ok(x.iter()
            .zip(self.lower_bounds().iter().zip(self.upper_bounds()))
            .map(|(&v, (&lo, &hi))| if v.is_nan() { lo } else { v.clamp(lo, hi) })
            .collect())
    }

    /// Uniform draw inside the bounds, repaired.
    fn sample(&self, rng: &mut dyn RngCore) -> Result<Vec<f64>, GenomeError> {
        let raw = crate::genome::sample_uniform(self.lower_bounds(), self.upper_bounds(), rng);
        self.repair(&raw)
    }

    fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>, EvalError>;

    /// Weighted-sum fitness, larger is better. The default negates the
    /// weighted objective sum.
    fn scalar_fitness(&self, objectives: &[f64], weights: &[f64]) -> f64 {
        -objectives
            .iter()
            .zip(weights)
            .map(|(f, w)| f * w)
            .sum::<f64>()
    }

    /// Known Pareto front sample, if the problem has one.
    fn reference_front(&self) -> Option<Vec<Vec<f64>>> {
        None
    }
}
