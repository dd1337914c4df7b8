//! Persisted run records: `trace.csv`, `front.json`, `best.json`,
//! `config.txt` and `timing.json`. Everything except `timing.json` is a pure
//! function of the configuration.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::config::{EvaluatorChoice, ExperimentConfig};
use super::format::sig6;
use super::ExperimentError;
use crate::dominance::dominates_unchecked;
use crate::engines::{nondominated_unique, run, GenerationTrace, Individual, RunError, RunOutcome};
use crate::evaluator::Problem;
use crate::genome::{AntennaGenome, FixedDesign};
use crate::metrics::{gd, igd, size_reduction, SIZE_REDUCTION_DEFINITION};

pub const TRACE_HEADER: &str = "generation,best_fitness,gd,igd,diversity,convergence_speed";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontFile {
    pub algorithm: String,
    pub evaluator: String,
    pub seed: u64,
    pub gene_names: Vec<String>,
    pub objective_names: Vec<String>,
    pub members: Vec<FrontMember>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontMember {
    pub genes: Vec<f64>,
    pub objectives: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestFile {
    pub algorithm: String,
    pub evaluator: String,
    pub seed: u64,
    pub gene_names: Vec<String>,
    pub genes: Vec<f64>,
    pub objective_names: Vec<String>,
    pub objectives: Vec<f64>,
    pub weights: Vec<f64>,
    pub fitness: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_reduction_percent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_reduction_definition: Option<String>,
}

/// The deterministic files of one run, rendered but not yet written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunArtifacts {
    pub trace_csv: String,
    pub front_json: String,
    pub best_json: String,
    pub config_txt: String,
}

/// Non-dominated union of every per-generation front of a trace.
pub fn pooled_trace_front(trace: &[GenerationTrace]) -> Vec<Vec<f64>> {
    let all: Vec<Individual> = trace
        .iter()
        .flat_map(|t| &t.front)
        .map(|o| Individual {
            genes: Vec::new(),
            objectives: o.clone(),
        })
        .collect();
    nondominated_unique(&all)
        .into_iter()
        .map(|i| i.objectives)
        .collect()
}

/// CSV trace. Rows lacking GD/IGD (problems without an analytic front) are
/// measured against `fallback_reference` when one is given.
pub fn trace_csv(trace: &[GenerationTrace], fallback_reference: Option<&[Vec<f64>]>) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    let cell = |v: Option<f64>| v.map(sig6).unwrap_or_default();
    for t in trace {
        let (g, i) = match (t.gd, t.igd, fallback_reference) {
            (Some(g), Some(i), _) => (Some(g), Some(i)),
            (_, _, Some(r)) if !t.front.is_empty() => (gd(&t.front, r).ok(), igd(&t.front, r).ok()),
            _ => (None, None),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            t.generation,
            sig6(t.best_fitness),
            cell(g),
            cell(i),
            sig6(t.diversity),
            cell(t.convergence_speed)
        ));
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Renders the deterministic run files. Fails if the reported front is not
/// mutually non-dominated.
pub fn render(
    cfg: &ExperimentConfig,
    problem: &dyn Problem,
    outcome: &RunOutcome,
) -> Result<RunArtifacts, ExperimentError> {
    for a in &outcome.front {
        if outcome
            .front
            .iter()
            .any(|b| dominates_unchecked(&b.objectives, &a.objectives))
        {
            return Err(ExperimentError::Record(
                "reported front contains a dominated member".into(),
            ));
        }
    }
    let fallback = problem
        .reference_front()
        .is_none()
        .then(|| pooled_trace_front(&outcome.trace));
    let front = FrontFile {
        algorithm: cfg.algorithm.to_string(),
        evaluator: cfg.evaluator.to_string(),
        seed: cfg.seed,
        gene_names: problem.gene_names(),
        objective_names: problem.objective_names(),
        members: outcome
            .front
            .iter()
            .map(|i| FrontMember {
                genes: i.genes.clone(),
                objectives: i.objectives.clone(),
            })
            .collect(),
    };
    let reduction = if matches!(cfg.evaluator, EvaluatorChoice::Benchmark(_)) {
        None
    } else {
        AntennaGenome::from_slice(&outcome.best.genes)
            .ok()
            .map(|g| size_reduction(&g, &FixedDesign::default()))
    };
    let best = BestFile {
        algorithm: cfg.algorithm.to_string(),
        evaluator: cfg.evaluator.to_string(),
        seed: cfg.seed,
        gene_names: problem.gene_names(),
        genes: outcome.best.genes.clone(),
        objective_names: problem.objective_names(),
        objectives: outcome.best.objectives.clone(),
        weights: cfg.run_config(problem.num_objectives()).weights,
        fitness: outcome.best_fitness,
        size_reduction_percent: reduction,
        size_reduction_definition: reduction.map(|_| SIZE_REDUCTION_DEFINITION.to_string()),
    };
    Ok(RunArtifacts {
        trace_csv: trace_csv(&outcome.trace, fallback.as_deref()),
        front_json: to_json(&front),
        best_json: to_json(&best),
        config_txt: cfg.to_text(),
    })
}

pub fn write_artifacts(
    dir: &Path,
    artifacts: &RunArtifacts,
    elapsed: Duration,
) -> Result<(), ExperimentError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("trace.csv"), &artifacts.trace_csv)?;
    fs::write(dir.join("front.json"), &artifacts.front_json)?;
    fs::write(dir.join("best.json"), &artifacts.best_json)?;
    fs::write(dir.join("config.txt"), &artifacts.config_txt)?;
    fs::write(
        dir.join("timing.json"),
        format!("{{\n  \"seconds\": {}\n}}\n", elapsed.as_secs_f64()),
    )?;
    Ok(())
}

/// Result of [`execute`].
#[derive(Debug, Clone)]
pub struct RunReport {
    pub outcome: RunOutcome,
    pub artifacts: RunArtifacts,
    pub elapsed: Duration,
}

/// Runs `cfg` and writes its record into `out`. On evaluator failure the
/// generations completed so far are still written to `trace.csv`.
pub fn execute(cfg: &ExperimentConfig, out: &Path) -> Result<RunReport, ExperimentError> {
    let problem = cfg.build_problem();
    let run_cfg = cfg.run_config(problem.num_objectives());
    let start = Instant::now();
    let outcome = match run(problem.as_ref(), &run_cfg) {
        Ok(o) => o,
        Err(RunError::Evaluation {
            generation,
            source,
            trace,
        }) => {
            fs::create_dir_all(out)?;
            let fallback = pooled_trace_front(&trace);
            let reference = (!fallback.is_empty()).then_some(fallback.as_slice());
            fs::write(out.join("trace.csv"), trace_csv(&trace, reference))?;
            fs::write(out.join("config.txt"), cfg.to_text())?;
            return Err(ExperimentError::Run(RunError::Evaluation {
                generation,
                source,
                trace,
            }));
        }
        Err(e) => return Err(e.into()),
    };
    let elapsed = start.elapsed();
    let artifacts = render(cfg, problem.as_ref(), &outcome)?;
    write_artifacts(out, &artifacts, elapsed)?;
    Ok(RunReport {
        outcome,
        artifacts,
        elapsed,
    })
}
