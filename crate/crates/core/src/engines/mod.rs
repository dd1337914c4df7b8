//! The six optimization drivers on one generation loop.
//!
//! Every generation evaluates a batch of `N` candidates, hands the evaluated
//! batch to the algorithm's strategy (ranking, fitness assignment, elitist or
//! archive update), records a [`GenerationTrace`], and, unless it was the last
//! generation, asks the strategy for the next batch. A run therefore costs at
//! most `N * G` evaluations; elites carried over unchanged are not
//! re-evaluated.

mod config;
mod elitist;
mod pareto;
mod scalar;
mod selection;
mod spea;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dominance::dominates_unchecked;
use crate::evaluator::{EvalError, Problem};
use crate::genome::{polynomial_mutation, sbx_crossover, GenomeError};
use crate::metrics::{gd, igd, population_diversity};

pub use config::{Algorithm, RunConfig, SharedSelection};
pub use elitist::nsga2_survivors;
pub use pareto::{nsga1_fitness, pga_fitness};
pub use selection::{binary_tournament, proportionate};
pub use spea::{spea_fitness, update_archive};

/// A decision vector with its objective values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub genes: Vec<f64>,
    pub objectives: Vec<f64>,
}

/// One row of the per-generation record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationTrace {
    /// 1-based.
    pub generation: usize,
    /// Best scalarized fitness seen so far (larger is better).
    pub best_fitness: f64,
    /// Objective vectors of the front the algorithm currently reports.
    pub front: Vec<Vec<f64>>,
    pub diversity: f64,
    /// `None` in the first generation.
    pub convergence_speed: Option<f64>,
    /// Against the problem's analytic front, when it has one.
    pub gd: Option<f64>,
    pub igd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub population: Vec<Individual>,
    /// Running front (PGA), archive (SPEA) or the population's non-dominated set.
    pub front: Vec<Individual>,
    /// Individual with the largest scalarized fitness seen during the run.
    pub best: Individual,
    pub best_fitness: f64,
    pub trace: Vec<GenerationTrace>,
    pub evaluations: usize,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Genome(#[from] GenomeError),
    #[error("evaluation failed in generation {generation}: {source}")]
    Evaluation {
        generation: usize,
        #[source]
        source: EvalError,
        /// Records of the generations completed before the failure.
        trace: Vec<GenerationTrace>,
    },
}

/// What an observer sees after each generation.
#[derive(Debug, Clone, Copy)]
pub struct GenerationView<'a> {
    pub generation: usize,
    pub population: &'a [Individual],
    pub front: &'a [Individual],
    /// The SPEA external archive; `None` for other algorithms.
    pub archive: Option<&'a [Individual]>,
}

pub(crate) enum Candidate {
    /// Carried over with its known objectives.
    Kept(Individual),
    Fresh(Vec<f64>),
}

pub(crate) struct Ctx<'a> {
    pub problem: &'a dyn Problem,
    pub cfg: &'a RunConfig,
    pub rng: ChaCha8Rng,
}

impl Ctx<'_> {
    /// SBX on two parents, then polynomial mutation and repair of each child.
    pub fn offspring(
        &mut self,
        p1: &[f64],
        p2: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>), GenomeError> {
        let lo = self.problem.lower_bounds();
        let hi = self.problem.upper_bounds();
        let v = &self.cfg.variation;
        let (c1, c2) = sbx_crossover(p1, p2, lo, hi, v, &mut self.rng);
        let m1 = polynomial_mutation(&c1, lo, hi, v, &mut self.rng);
        let m2 = polynomial_mutation(&c2, lo, hi, v, &mut self.rng);
        Ok((self.problem.repair(&m1)?, self.problem.repair(&m2)?))
    }

    /// `count` children from parents picked by `select`. With `first_only`
    /// each mating contributes only its first child.
    pub fn breed<F>(
        &mut self,
        parents: &[Individual],
        count: usize,
        first_only: bool,
        mut select: F,
    ) -> Result<Vec<Candidate>, GenomeError>
    where
        F: FnMut(&mut ChaCha8Rng) -> usize,
    {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let a = select(&mut self.rng);
            let b = select(&mut self.rng);
            let (c1, c2) = self.offspring(&parents[a].genes, &parents[b].genes)?;
            out.push(Candidate::Fresh(c1));
            if !first_only && out.len() < count {
                out.push(Candidate::Fresh(c2));
            }
        }
        Ok(out)
    }
}

pub(crate) trait Strategy {
    fn absorb(&mut self, batch: Vec<Individual>, ctx: &mut Ctx<'_>);

    fn population(&self) -> &[Individual];

    fn front(&self) -> Vec<Individual> {
        nondominated_unique(self.population())
    }

    fn archive(&self) -> Option<&[Individual]> {
        None
    }

    fn propose(&mut self, ctx: &mut Ctx<'_>) -> Result<Vec<Candidate>, GenomeError>;
}

/// Non-dominated members in input order, dropping repeated objective vectors.
pub fn nondominated_unique(pop: &[Individual]) -> Vec<Individual> {
    let mut out: Vec<Individual> = Vec::new();
    for (i, a) in pop.iter().enumerate() {
        let dominated = pop
            .iter()
            .enumerate()
            .any(|(j, b)| j != i && dominates_unchecked(&b.objectives, &a.objectives));
        if !dominated && !out.iter().any(|o| o.objectives == a.objectives) {
            out.push(a.clone());
        }
    }
    out
}

fn make_strategy(problem: &dyn Problem, cfg: &RunConfig) -> Result<Box<dyn Strategy>, RunError> {
    Ok(match cfg.algorithm {
        Algorithm::Pga => Box::new(pareto::Pga::default()),
        Algorithm::Nsga1 => Box::new(pareto::Nsga1::default()),
        Algorithm::Nsga2 => Box::new(elitist::Elitist::crowding()),
        Algorithm::Nsga3 => {
            let refs = crate::diversity::das_dennis(problem.num_objectives(), cfg.ref_divisions)
                .map_err(|e| RunError::Config(e.to_string()))?;
            Box::new(elitist::Elitist::reference(refs))
        }
        Algorithm::Spea => Box::new(spea::Spea::new(cfg.archive_capacity())),
        Algorithm::Scalar => Box::new(scalar::Scalar::default()),
    })
}

fn evaluate_batch(
    problem: &dyn Problem,
    pool: &rayon::ThreadPool,
    candidates: Vec<Candidate>,
) -> Result<Vec<Individual>, EvalError> {
    let results: Vec<Result<Individual, EvalError>> = pool.install(|| {
        candidates
            .into_par_iter()
            .map(|c| match c {
                Candidate::Kept(ind) => Ok(ind),
                Candidate::Fresh(genes) => {
                    let objectives = problem.evaluate(&genes)?;
                    Ok(Individual { genes, objectives })
                }
            })
            .collect()
    });
    results.into_iter().collect()
}

/// Runs `cfg.generations` generations of `cfg.algorithm` on `problem`.
pub fn run(problem: &dyn Problem, cfg: &RunConfig) -> Result<RunOutcome, RunError> {
    run_with_observer(problem, cfg, &mut |_| {})
}

/// As [`run`], calling `observer` after every generation.
pub fn run_with_observer(
    problem: &dyn Problem,
    cfg: &RunConfig,
    observer: &mut dyn FnMut(&GenerationView<'_>),
) -> Result<RunOutcome, RunError> {
    cfg.validate(problem.num_objectives())
        .map_err(RunError::Config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| RunError::Config(e.to_string()))?;
    let mut strategy = make_strategy(problem, cfg)?;
    let mut ctx = Ctx {
        problem,
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
    };
    let reference = problem.reference_front();

    let mut candidates = (0..cfg.population)
        .map(|_| problem.sample(&mut ctx.rng).map(Candidate::Fresh))
        .collect::<Result<Vec<_>, _>>()?;
    let mut trace: Vec<GenerationTrace> = Vec::with_capacity(cfg.generations);
    let mut best: Option<(f64, Individual)> = None;
    let mut evaluations = 0;

    for generation in 1..=cfg.generations {
        evaluations += candidates
            .iter()
            .filter(|c| matches!(c, Candidate::Fresh(_)))
            .count();
        let batch = match evaluate_batch(problem, &pool, candidates) {
            Ok(batch) => batch,
            Err(source) => {
                return Err(RunError::Evaluation {
                    generation,
                    source,
                    trace,
                })
            }
        };
        strategy.absorb(batch, &mut ctx);

        let population = strategy.population();
        let generation_best = population
            .iter()
            .map(|ind| (problem.scalar_fitness(&ind.objectives, &cfg.weights), ind))
            .fold(None::<(f64, &Individual)>, |acc, (f, ind)| match acc {
                Some((bf, _)) if !(f > bf) => acc,
                _ => Some((f, ind)),
            })
            .expect("population is never empty");
        if best.as_ref().is_none_or(|(bf, _)| generation_best.0 > *bf) {
            best = Some((generation_best.0, generation_best.1.clone()));
        }
        let best_fitness = best.as_ref().expect("set above").0;

        let front = strategy.front();
        let front_objectives: Vec<Vec<f64>> = front.iter().map(|i| i.objectives.clone()).collect();
        let genes: Vec<&[f64]> = population.iter().map(|i| i.genes.as_slice()).collect();
        let (gd_value, igd_value) = match &reference {
            Some(r) => (
                gd(&front_objectives, r).ok(),
                igd(&front_objectives, r).ok(),
            ),
            None => (None, None),
        };
        let convergence_speed = trace.last().map(|prev| {
            (best_fitness - prev.best_fitness).abs() / prev.best_fitness.abs().max(1.0)
        });
        trace.push(GenerationTrace {
            generation,
            best_fitness,
            front: front_objectives,
            diversity: population_diversity(&genes),
            convergence_speed,
            gd: gd_value,
            igd: igd_value,
        });
        observer(&GenerationView {
            generation,
            population,
            front: &front,
            archive: strategy.archive(),
        });

        if generation < cfg.generations {
            candidates = strategy.propose(&mut ctx)?;
        } else {
            candidates = Vec::new();
        }
    }
    debug_assert!(candidates.is_empty());

    let (best_fitness, best) = best.expect("at least one generation ran");
    Ok(RunOutcome {
        population: strategy.population().to_vec(),
        front: strategy.front(),
        best,
        best_fitness,
        trace,
        evaluations,
    })
}
