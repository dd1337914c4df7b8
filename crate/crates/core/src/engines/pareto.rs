//! PGA (Fonseca–Fleming ranking with sharing and a single elite) and NSGA-I
//! (front-wise dummy fitness with sharing, no elitism).

use rand_chacha::ChaCha8Rng;

use super::selection::{binary_tournament, proportionate};
use super::{Candidate, Ctx, Individual, SharedSelection, Strategy};
use crate::diversity::{niche_counts, normalize_objectives, shared_fitness};
use crate::dominance::{dominates_unchecked, fast_nondominated_sort, fonseca_rank};
use crate::genome::GenomeError;
use crate::Sharing;

/// Shared fitness for PGA: raw fitness `N + 1 - rank` divided by the niche
/// count over the whole population in min/max-normalized objective space.
/// Larger is better.
pub fn pga_fitness<V: AsRef<[f64]>>(objectives: &[V], sharing: &Sharing) -> Vec<f64> {
    let n = objectives.len();
    let raw: Vec<f64> = fonseca_rank(objectives)
        .into_iter()
        .map(|r| (n + 1 - r) as f64)
        .collect();
    shared_fitness(&normalize_objectives(objectives), &raw, sharing)
}

/// Shared fitness for NSGA-I. Front 1 receives dummy fitness `N`; each later
/// front receives 0.9 times the smallest shared fitness of the front before
/// it. Niche counts are taken within the front in min/max-normalized
/// objective space. Larger is better, and every member of a front beats every
/// member of the next.
pub fn nsga1_fitness<V: AsRef<[f64]>>(objectives: &[V], sharing: &Sharing) -> Vec<f64> {
    let normalized = normalize_objectives(objectives);
    let mut fitness = vec![0.0; objectives.len()];
    let mut dummy = objectives.len() as f64;
    for front in fast_nondominated_sort(objectives) {
        let counts = niche_counts(&normalized, &front, sharing);
        let mut lowest = f64::INFINITY;
        for (&i, c) in front.iter().zip(counts) {
            fitness[i] = dummy / c;
            lowest = lowest.min(fitness[i]);
        }
        dummy = 0.9 * lowest;
    }
    fitness
}

fn objectives_of(pop: &[Individual]) -> Vec<&[f64]> {
    pop.iter().map(|i| i.objectives.as_slice()).collect()
}

fn higher_wins(fitness: &[f64]) -> impl Fn(&mut ChaCha8Rng) -> usize + '_ {
    move |rng| binary_tournament(fitness.len(), rng, |a, b| fitness[a] > fitness[b])
}

#[derive(Debug, Default)]
pub(crate) struct Pga {
    pop: Vec<Individual>,
    rank: Vec<usize>,
    fitness: Vec<f64>,
    running: Vec<Individual>,
}

/// Adds `candidate` to a non-dominated set unless it is dominated or repeats
/// an existing objective vector; evicts members it dominates.
pub(crate) fn merge_into_front(front: &mut Vec<Individual>, candidate: &Individual) {
    let blocked = front.iter().any(|m| {
        m.objectives == candidate.objectives
            || dominates_unchecked(&m.objectives, &candidate.objectives)
    });
    if !blocked {
        front.retain(|m| !dominates_unchecked(&candidate.objectives, &m.objectives));
        front.push(candidate.clone());
    }
}

impl Strategy for Pga {
    fn absorb(&mut self, batch: Vec<Individual>, ctx: &mut Ctx<'_>) {
        self.pop = batch;
        let objs = objectives_of(&self.pop);
        self.rank = fonseca_rank(&objs);
        self.fitness = pga_fitness(&objs, &ctx.cfg.sharing);
        for (ind, &r) in self.pop.iter().zip(&self.rank) {
            if r == 1 {
                merge_into_front(&mut self.running, ind);
            }
        }
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn front(&self) -> Vec<Individual> {
        self.running.clone()
    }

    fn propose(&mut self, ctx: &mut Ctx<'_>) -> Result<Vec<Candidate>, GenomeError> {
        let elite = (0..self.pop.len())
            .filter(|&i| self.rank[i] == 1)
            .fold(None::<usize>, |best, i| match best {
                Some(b) if self.fitness[i] <= self.fitness[b] => Some(b),
                _ => Some(i),
            })
            .expect("some member has rank 1");
        let mut next = vec![Candidate::Kept(self.pop[elite].clone())];
        let n = ctx.cfg.population;
        next.extend(ctx.breed(&self.pop, n - 1, false, higher_wins(&self.fitness))?);
        Ok(next)
    }
}

#[derive(Debug, Default)]
pub(crate) struct Nsga1 {
    pop: Vec<Individual>,
    fitness: Vec<f64>,
}

impl Strategy for Nsga1 {
    fn absorb(&mut self, batch: Vec<Individual>, ctx: &mut Ctx<'_>) {
        self.pop = batch;
        self.fitness = nsga1_fitness(&objectives_of(&self.pop), &ctx.cfg.sharing);
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn propose(&mut self, ctx: &mut Ctx<'_>) -> Result<Vec<Candidate>, GenomeError> {
        let n = ctx.cfg.population;
        match ctx.cfg.nsga1_selection {
            SharedSelection::Tournament => {
                ctx.breed(&self.pop, n, false, higher_wins(&self.fitness))
            }
            SharedSelection::Proportionate => {
                let fitness = &self.fitness;
                ctx.breed(&self.pop, n, false, |rng| proportionate(fitness, rng))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::front_ranks;
    use rand::{Rng, SeedableRng};

    fn sharing() -> Sharing {
        Sharing::default()
    }

    #[test]
    fn pga_chain_population() {
        // ranks 1, 2, 3; points far apart after normalization so n_i = 1
        let objs = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(pga_fitness(&objs, &sharing()), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pga_clones_share_equally() {
        let objs = vec![vec![1.0, 1.0]; 4];
        // all rank 1, raw = 4, niche count 4
        assert_eq!(pga_fitness(&objs, &sharing()), vec![1.0; 4]);
    }

    #[test]
    fn nsga1_single_front_pressure_comes_from_niches() {
        let objs = vec![vec![0.0, 1.0], vec![0.02, 0.98], vec![1.0, 0.0]];
        let f = nsga1_fitness(&objs, &sharing());
        // isolated member keeps the full dummy fitness N = 3
        assert_eq!(f[2], 3.0);
        assert!(f[0] < 3.0 && f[1] < 3.0);
        let clones = vec![vec![2.0, 2.0]; 5];
        assert_eq!(nsga1_fitness(&clones, &sharing()), vec![1.0; 5]);
    }

    #[test]
    fn nsga1_dummy_schedule_orders_fronts() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let n = rng.gen_range(2..30);
            let objs: Vec<Vec<f64>> = (0..n)
                .map(|_| vec![rng.gen(), rng.gen(), rng.gen()])
                .collect();
            let f = nsga1_fitness(&objs, &sharing());
            let fronts = fast_nondominated_sort(&objs);
            let rank = front_ranks(&fronts, n);
            for a in 0..n {
                for b in 0..n {
                    if rank[a] < rank[b] {
                        assert!(f[a] > f[b]);
                    }
                }
            }
            // first front: dummy N divided by niche count
            let counts = niche_counts(&normalize_objectives(&objs), &fronts[0], &sharing());
            for (&i, c) in fronts[0].iter().zip(counts) {
                assert_eq!(f[i], n as f64 / c);
            }
        }
    }

    #[test]
    fn running_front_merge() {
        let ind = |a: f64, b: f64| Individual {
            genes: vec![a, b],
            objectives: vec![a, b],
        };
        let mut front = vec![];
        merge_into_front(&mut front, &ind(2.0, 2.0));
        merge_into_front(&mut front, &ind(1.0, 3.0));
        merge_into_front(&mut front, &ind(2.0, 2.0));
        merge_into_front(&mut front, &ind(3.0, 3.0));
        assert_eq!(front.len(), 2);
        merge_into_front(&mut front, &ind(0.5, 0.5));
        assert_eq!(front, vec![ind(0.5, 0.5)]);
    }
}
