//! SPEA: strength fitness over population plus external archive.

use super::pareto::merge_into_front;
use super::selection::binary_tournament;
use super::{Candidate, Ctx, Individual, Strategy};
use crate::dominance::{crowding_distance, dominates_unchecked};
use crate::genome::GenomeError;

/// Strength `S(i) = |{j : i dominates j}| / (len + 1)` and fitness
/// `1 + sum of S(j) over the members j dominating i`. Lower is better;
/// non-dominated members score exactly 1.
pub fn spea_fitness<V: AsRef<[f64]>>(objectives: &[V]) -> Vec<f64> {
    let n = objectives.len();
    let dominance: Vec<Vec<bool>> = objectives
        .iter()
        .map(|a| {
            objectives
                .iter()
                .map(|b| dominates_unchecked(a.as_ref(), b.as_ref()))
                .collect()
        })
        .collect();
    let strength: Vec<f64> = dominance
        .iter()
        .map(|row| row.iter().filter(|&&d| d).count() as f64 / (n + 1) as f64)
        .collect();
    (0..n)
        .map(|i| {
            1.0 + (0..n)
                .filter(|&j| dominance[j][i])
                .map(|j| strength[j])
                .sum::<f64>()
        })
        .collect()
}

/// Non-dominated members of `pool` (first occurrence of each objective
/// vector, in pool order), truncated to `capacity` by repeatedly removing the
/// member with the smallest crowding distance. Ties remove the later member,
/// so with the archive placed first incumbents survive.
pub fn update_archive(pool: &[Individual], capacity: usize) -> Vec<Individual> {
    let mut archive = Vec::new();
    for ind in pool {
        merge_into_front(&mut archive, ind);
    }
    // merge_into_front appends, so restore pool order
    archive.sort_by_key(|a: &Individual| {
        pool.iter()
            .position(|p| p.objectives == a.objectives)
            .expect("archive members come from the pool")
    });
    while archive.len() > capacity {
        let objs: Vec<&[f64]> = archive.iter().map(|i| i.objectives.as_slice()).collect();
        let all: Vec<usize> = (0..archive.len()).collect();
        let crowding = crowding_distance(&objs, &all);
        let victim = (0..archive.len())
            .rev()
            .min_by(|&a, &b| crowding[a].total_cmp(&crowding[b]))
            .expect("non-empty");
        archive.remove(victim);
    }
    archive
}

pub(crate) struct Spea {
    capacity: usize,
    pop: Vec<Individual>,
    archive: Vec<Individual>,
    union: Vec<Individual>,
    fitness: Vec<f64>,
}

impl Spea {
    pub fn new(capacity: usize) -> Self {
        Spea {
            capacity,
            pop: Vec::new(),
            archive: Vec::new(),
            union: Vec::new(),
            fitness: Vec::new(),
        }
    }
}

impl Strategy for Spea {
    fn absorb(&mut self, batch: Vec<Individual>, _ctx: &mut Ctx<'_>) {
        self.pop = batch;
        self.union = self.archive.iter().chain(&self.pop).cloned().collect();
        let objs: Vec<&[f64]> = self.union.iter().map(|i| i.objectives.as_slice()).collect();
        self.fitness = spea_fitness(&objs);
        self.archive = update_archive(&self.union, self.capacity);
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn front(&self) -> Vec<Individual> {
        self.archive.clone()
    }

    fn archive(&self) -> Option<&[Individual]> {
        Some(&self.archive)
    }

    fn propose(&mut self, ctx: &mut Ctx<'_>) -> Result<Vec<Candidate>, GenomeError> {
        let fitness = &self.fitness;
        ctx.breed(&self.union, ctx.cfg.population, false, |rng| {
            binary_tournament(fitness.len(), rng, |a, b| fitness[a] < fitness[b])
        })
    }
}
