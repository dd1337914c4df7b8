//! NSGA-II and NSGA-III: parents and offspring compete for `N` places.

use super::selection::binary_tournament;
use super::{Candidate, Ctx, Individual, Strategy};
use crate::diversity::nsga3_select;
use crate::dominance::{crowding_distance, fast_nondominated_sort, RankedPopulation};
use crate::genome::GenomeError;
use crate::ReferencePoints;

/// Elitist survivor selection: whole fronts while they fit, then members of
/// the splitting front by descending crowding distance (lower index first on
/// ties). Returns `n` indices in selection order.
///
/// # Panics
///
/// If fewer than `n` objective vectors are given.
pub fn nsga2_survivors<V: AsRef<[f64]>>(objectives: &[V], n: usize) -> Vec<usize> {
    assert!(
        objectives.len() >= n,
        "pool smaller than the requested population"
    );
    let mut selected = Vec::with_capacity(n);
    for front in fast_nondominated_sort(objectives) {
        if selected.len() == n {
            break;
        }
        if selected.len() + front.len() <= n {
            selected.extend_from_slice(&front);
            continue;
        }
        let crowding = crowding_distance(objectives, &front);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| {
            crowding[b]
                .total_cmp(&crowding[a])
                .then(front[a].cmp(&front[b]))
        });
        let room = n - selected.len();
        selected.extend(order.into_iter().take(room).map(|k| front[k]));
    }
    selected
}

enum Survival {
    Crowding,
    Reference(ReferencePoints),
}

pub(crate) struct Elitist {
    survival: Survival,
    pop: Vec<Individual>,
    ranked: Option<RankedPopulation<f64>>,
}

impl Elitist {
    pub fn crowding() -> Self {
        Elitist {
            survival: Survival::Crowding,
            pop: Vec::new(),
            ranked: None,
        }
    }

    pub fn reference(refs: ReferencePoints) -> Self {
        Elitist {
            survival: Survival::Reference(refs),
            pop: Vec::new(),
            ranked: None,
        }
    }
}

impl Strategy for Elitist {
    fn absorb(&mut self, batch: Vec<Individual>, ctx: &mut Ctx<'_>) {
        let mut pool = std::mem::take(&mut self.pop);
        pool.extend(batch);
        let n = ctx.cfg.population;
        let objs: Vec<&[f64]> = pool.iter().map(|i| i.objectives.as_slice()).collect();
        let keep = match &self.survival {
            Survival::Crowding => nsga2_survivors(&objs, n),
            Survival::Reference(refs) => nsga3_select(&objs, refs, n, &mut ctx.rng),
        };
        self.pop = keep.into_iter().map(|i| pool[i].clone()).collect();
        let objs: Vec<&[f64]> = self.pop.iter().map(|i| i.objectives.as_slice()).collect();
        self.ranked = Some(RankedPopulation::new(&objs));
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn propose(&mut self, ctx: &mut Ctx<'_>) -> Result<Vec<Candidate>, GenomeError> {
        let ranked = self.ranked.as_ref().expect("absorb runs before propose");
        let n = self.pop.len();
        match self.survival {
            Survival::Crowding => ctx.breed(&self.pop, ctx.cfg.population, false, |rng| {
                binary_tournament(n, rng, |a, b| ranked.crowded_cmp(a, b).is_lt())
            }),
            Survival::Reference(_) => ctx.breed(&self.pop, ctx.cfg.population, false, |rng| {
                binary_tournament(n, rng, |a, b| ranked.rank[a] < ranked.rank[b])
            }),
        }
    }
}
