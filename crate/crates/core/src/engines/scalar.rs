//! Weighted-sum GA: maximize `F = sum w_k |f_k|` (for the antenna problem) with
//! the overall best copied into slot 1 of every new population.

use super::selection::binary_tournament;
use super::{Candidate, Ctx, Individual, Strategy};
use crate::genome::GenomeError;

#[derive(Debug, Default)]
pub(crate) struct Scalar {
    pop: Vec<Individual>,
    fitness: Vec<f64>,
    best: Option<(f64, Individual)>,
}

impl Strategy for Scalar {
    fn absorb(&mut self, batch: Vec<Individual>, ctx: &mut Ctx<'_>) {
        self.pop = batch;
        let weights = &ctx.cfg.weights;
        self.fitness = self
            .pop
            .iter()
            .map(|i| ctx.problem.scalar_fitness(&i.objectives, weights))
            .collect();
        let mut arg = 0;
        for i in 1..self.fitness.len() {
            if self.fitness[i] > self.fitness[arg] {
                arg = i;
            }
        }
        if self
            .best
            .as_ref()
            .is_none_or(|(f, _)| self.fitness[arg] > *f)
        {
            self.best = Some((self.fitness[arg], self.pop[arg].clone()));
        }
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn propose(&mut self, ctx: &mut Ctx<'_>) -> Result<Vec<Candidate>, GenomeError> {
        let (_, best) = self.best.as_ref().expect("absorb runs before propose");
        let mut next = vec![Candidate::Kept(best.clone())];
        let fitness = &self.fitness;
        next.extend(ctx.breed(&self.pop, ctx.cfg.population - 1, true, |rng| {
            binary_tournament(fitness.len(), rng, |a, b| fitness[a] > fitness[b])
        })?);
        Ok(next)
    }
}
