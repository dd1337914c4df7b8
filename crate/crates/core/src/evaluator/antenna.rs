use super::external::ExternalEvaluator;
use super::response::objectives_from_response;
use super::surrogate::{surrogate_response, SurrogateConfig};
use super::{EvalError, ObjectiveVector, Problem};
use crate::genome::{repair, AntennaGenome, FixedDesign, GenomeError, ParameterBounds, GENE_NAMES};

/// Where antenna objective values come from.
#[derive(Debug)]
pub enum AntennaBackend {
    Surrogate(SurrogateConfig),
    External(ExternalEvaluator),
}

/// The tri-band antenna design problem: 10 genes, 3 S11 objectives.
#[derive(Debug)]
pub struct AntennaProblem {
    bounds: ParameterBounds,
    fixed: FixedDesign,
    backend: AntennaBackend,
}

impl AntennaProblem {
    pub fn new(bounds: ParameterBounds, fixed: FixedDesign, backend: AntennaBackend) -> Self {
        AntennaProblem {
            bounds,
            fixed,
            backend,
        }
    }

    /// Default bounds and design constants with the calibrated surrogate.
    pub fn surrogate() -> Self {
        let fixed = FixedDesign::default();
        Self::new(
            ParameterBounds::default(),
            fixed,
            AntennaBackend::Surrogate(SurrogateConfig::calibrated(&fixed)),
        )
    }

    pub fn external(evaluator: ExternalEvaluator) -> Self {
        Self::new(
            ParameterBounds::default(),
            FixedDesign::default(),
            AntennaBackend::External(evaluator),
        )
    }

    pub fn bounds(&self) -> &ParameterBounds {
        &self.bounds
    }

    pub fn fixed(&self) -> &FixedDesign {
        &self.fixed
    }

    pub fn backend(&self) -> &AntennaBackend {
        &self.backend
    }

    pub fn evaluate_genome(&self, genome: &AntennaGenome) -> Result<ObjectiveVector, EvalError> {
        match &self.backend {
            AntennaBackend::Surrogate(cfg) => {
                objectives_from_response(&surrogate_response(genome, &self.fixed, cfg))
            }
            AntennaBackend::External(ext) => ext.evaluate(genome),
        }
    }
}

impl Problem for AntennaProblem {
    fn name(&self) -> &str {
        match self.backend {
            AntennaBackend::Surrogate(_) => "surrogate",
            AntennaBackend::External(_) => "external",
        }
    }

    fn dimension(&self) -> usize {
        GENE_NAMES.len()
    }

    fn num_objectives(&self) -> usize {
        3
    }

    fn lower_bounds(&self) -> &[f64] {
        &self.bounds.low
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.bounds.high
    }

    fn gene_names(&self) -> Vec<String> {
        GENE_NAMES.iter().map(|s| s.to_string()).collect()
    }

    fn objective_names(&self) -> Vec<String> {
        ["s11_24", "s11_36", "s11_52"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    fn repair(&self, x: &[f64]) -> Result<Vec<f64>, GenomeError> {
        Ok(repair(x, &self.bounds)?.to_array().to_vec())
    }

    fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>, EvalError> {
        let genome = AntennaGenome::from_slice(x).map_err(|_| EvalError::DimensionMismatch {
            expected: GENE_NAMES.len(),
            got: x.len(),
        })?;
        Ok(self.evaluate_genome(&genome)?.to_vec())
    }

    /// `sum w_k |S11_k|`; larger means deeper matching at the target bands.
    fn scalar_fitness(&self, objectives: &[f64], weights: &[f64]) -> f64 {
        objectives
            .iter()
            .zip(weights)
            .map(|(f, w)| w * f.abs())
            .sum()
    }
}
