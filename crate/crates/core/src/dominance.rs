//! Pareto dominance, Fonseca–Fleming ranking, non-dominated sorting and
//! crowding distance. All objectives are minimized.

use std::cmp::Ordering;

use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominanceError {
    #[error("objective vectors have different lengths ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

/// `true` iff `a` is no worse than `b` in every objective and strictly better
/// in at least one.
pub fn dominates<T: Scalar>(a: &[T], b: &[T]) -> Result<bool, DominanceError> {
    if a.len() != b.len() {
        return Err(DominanceError::DimensionMismatch(a.len(), b.len()));
    }
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked<T: Scalar>(a: &[T], b: &[T]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

fn check_dimensions<T, V: AsRef<[T]>>(pop: &[V]) {
    if let Some(first) = pop.first() {
        let m = first.as_ref().len();
        for v in pop {
            assert_eq!(
                v.as_ref().len(),
                m,
                "all objective vectors in a population must have the same length"
            );
        }
    }
}

/// Fonseca–Fleming rank: one plus the number of population members that
/// dominate each individual.
///
/// # Panics
///
/// If the objective vectors do not all have the same length.
pub fn fonseca_rank<T: Scalar, V: AsRef<[T]>>(pop: &[V]) -> Vec<usize> {
    check_dimensions(pop);
    (0..pop.len())
        .map(|i| {
            1 + (0..pop.len())
                .filter(|&j| j != i && dominates_unchecked(pop[j].as_ref(), pop[i].as_ref()))
                .count()
        })
        .collect()
}

/// Fast non-dominated sort. Returns the fronts `F1, F2, ...` as lists of
/// population indices in ascending order.
///
/// # Panics
///
/// If the objective vectors do not all have the same length.
pub fn fast_nondominated_sort<T: Scalar, V: AsRef<[T]>>(pop: &[V]) -> Vec<Vec<usize>> {
    check_dimensions(pop);
    let n = pop.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];

    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (pop[i].as_ref(), pop[j].as_ref());
            if dominates_unchecked(a, b) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates_unchecked(b, a) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Indices of the non-dominated members of `pop`, ascending.
pub fn nondominated_indices<T: Scalar, V: AsRef<[T]>>(pop: &[V]) -> Vec<usize> {
    check_dimensions(pop);
    (0..pop.len())
        .filter(|&i| {
            !(0..pop.len()).any(|j| j != i && dominates_unchecked(pop[j].as_ref(), pop[i].as_ref()))
        })
        .collect()
}

/// Converts a front partition into a 1-based front index per individual.
pub fn front_ranks(fronts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut ranks = vec![0; n];
    for (k, front) in fronts.iter().enumerate() {
        for &i in front {
            ranks[i] = k + 1;
        }
    }
    ranks
}

/// Crowding distance of each member of `front` (indices into `pop`), returned
/// in the same order as `front`.
///
/// Boundary members of every objective with a non-zero range get infinity;
/// an objective whose range is zero contributes nothing.
pub fn crowding_distance<T: Scalar, V: AsRef<[T]>>(pop: &[V], front: &[usize]) -> Vec<T> {
    let len = front.len();
    if len <= 2 {
        return vec![T::infinity(); len];
    }
    let m = pop[front[0]].as_ref().len();
    let mut distance = vec![T::zero(); len];
    let mut order: Vec<usize> = (0..len).collect();

    for k in 0..m {
        let value = |pos: usize| pop[front[pos]].as_ref()[k];
        order.sort_by(|&a, &b| {
            value(a)
                .partial_cmp(&value(b))
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        let lo = value(order[0]);
        let hi = value(order[len - 1]);
        let range = hi - lo;
        if !(range > T::zero()) {
            continue;
        }
        distance[order[0]] = T::infinity();
        distance[order[len - 1]] = T::infinity();
        for w in 1..len - 1 {
            let gap = (value(order[w + 1]) - value(order[w - 1])) / range;
            distance[order[w]] += gap;
        }
    }
    distance
}

/// A population annotated with front membership, rank and crowding distance.
#[derive(Debug, Clone)]
pub struct RankedPopulation<T> {
    pub fronts: Vec<Vec<usize>>,
    /// 1-based front index per individual.
    pub rank: Vec<usize>,
    /// Crowding distance per individual, computed within its own front.
    pub crowding: Vec<T>,
}

impl<T: Scalar> RankedPopulation<T> {
    pub fn new<V: AsRef<[T]>>(pop: &[V]) -> Self {
        let fronts = fast_nondominated_sort(pop);
        let rank = front_ranks(&fronts, pop.len());
        let mut crowding = vec![T::zero(); pop.len()];
        for front in &fronts {
            for (&i, d) in front.iter().zip(crowding_distance(pop, front)) {
                crowding[i] = d;
            }
        }
        RankedPopulation {
            fronts,
            rank,
            crowding,
        }
    }

    /// Crowded-comparison order: lower rank first, then larger crowding.
    pub fn crowded_cmp(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b]).then_with(|| {
            self.crowding[b]
                .partial_cmp(&self.crowding[a])
                .unwrap_or(Ordering::Equal)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_peel(pop: &[Vec<f64>]) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = (0..pop.len()).collect();
        let mut fronts = Vec::new();
        while !remaining.is_empty() {
            let front: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| {
                    !remaining.iter().any(|&j| {
                        let (a, b) = (&pop[j], &pop[i]);
                        a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
                    })
                })
                .collect();
            remaining.retain(|i| !front.contains(i));
            fronts.push(front);
        }
        fronts
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[1.0, 1.0, 1.0], &[2.0, 2.0, 2.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(!dominates(&[1.0, 3.0], &[2.0, 2.0]).unwrap());
        assert!(!dominates(&[2.0, 2.0], &[1.0, 3.0]).unwrap());
        assert_eq!(
            dominates(&[1.0, 2.0], &[1.0]),
            Err(DominanceError::DimensionMismatch(2, 1))
        );
    }

    #[test]
    fn fonseca_examples() {
        let chain = vec![vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]];
        assert_eq!(fonseca_rank(&chain), vec![1, 2, 3]);
        let mixed = vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![3.0, 3.0]];
        assert_eq!(fonseca_rank(&mixed), vec![1, 1, 3]);
    }

    #[test]
    fn sort_examples() {
        let flat = vec![
            vec![0.0, 3.0],
            vec![1.0, 2.0],
            vec![2.0, 1.0],
            vec![3.0, 0.0],
        ];
        assert_eq!(fast_nondominated_sort(&flat), vec![vec![0, 1, 2, 3]]);

        let chain: Vec<Vec<f64>> = (0..6).rev().map(|i| vec![i as f64, i as f64]).collect();
        let fronts = fast_nondominated_sort(&chain);
        assert_eq!(fronts.len(), 6);
        assert!(fronts.iter().all(|f| f.len() == 1));
        assert_eq!(fronts[0], vec![5]);
    }

    #[test]
    fn equal_vectors_share_a_front() {
        let pop = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(fast_nondominated_sort(&pop), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn crowding_examples() {
        let pop: Vec<Vec<f64>> = vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]];
        let d = crowding_distance(&pop, &[0, 1, 2]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert_eq!(d[1], 2.0);

        assert!(crowding_distance(&pop, &[0, 2])
            .iter()
            .all(|d| d.is_infinite()));

        let dup: Vec<Vec<f64>> = vec![
            vec![0.0, 1.0],
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            vec![1.0, 0.0],
        ];
        let d = crowding_distance(&dup, &[0, 1, 2, 3]);
        assert!(d[1].is_finite());
        assert_eq!(d[1], d[2]);
    }

    #[test]
    fn zero_range_objective_contributes_nothing() {
        let pop = vec![vec![0.0, 1.0], vec![0.5, 1.0], vec![1.0, 1.0]];
        let d = crowding_distance(&pop, &[0, 1, 2]);
        assert_eq!(d[1], 1.0);
    }

    #[test]
    fn works_in_single_precision() {
        let pop: Vec<Vec<f32>> = vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![3.0, 3.0]];
        assert_eq!(fonseca_rank(&pop), vec![1, 1, 3]);
        assert_eq!(fast_nondominated_sort(&pop), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn matches_naive_peel_on_random_populations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=50);
            let m = rng.gen_range(2..=3);
            // coarse grid so ties and duplicates occur
            let pop: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..m).map(|_| rng.gen_range(0..8) as f64).collect())
                .collect();
            let fast = fast_nondominated_sort(&pop);
            assert_eq!(fast, naive_peel(&pop));
            let ranks = fonseca_rank(&pop);
            let first: Vec<usize> = (0..n).filter(|&i| ranks[i] == 1).collect();
            assert_eq!(fast[0], first);
        }
    }

    proptest! {
        #[test]
        fn dominance_is_a_strict_partial_order(
            a in prop::collection::vec(0u8..4, 3),
            b in prop::collection::vec(0u8..4, 3),
            c in prop::collection::vec(0u8..4, 3),
        ) {
            let f = |v: &Vec<u8>| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
            let (a, b, c) = (f(&a), f(&b), f(&c));
            prop_assert!(!dominates(&a, &a).unwrap());
            if dominates(&a, &b).unwrap() {
                prop_assert!(!dominates(&b, &a).unwrap());
                if dominates(&b, &c).unwrap() {
                    prop_assert!(dominates(&a, &c).unwrap());
                }
            }
        }

        #[test]
        fn fronts_partition_and_layer(
            pop in prop::collection::vec(prop::collection::vec(0u8..6, 2), 1..30)
        ) {
            let pop: Vec<Vec<f64>> = pop.iter().map(|v| v.iter().map(|&x| x as f64).collect()).collect();
            let fronts = fast_nondominated_sort(&pop);
            let mut all: Vec<usize> = fronts.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..pop.len()).collect::<Vec<_>>());
            for (k, front) in fronts.iter().enumerate() {
                for &i in front {
                    for &j in front {
                        prop_assert!(!dominates_unchecked(&pop[i], &pop[j]));
                    }
                    if k > 0 {
                        prop_assert!(fronts[k - 1].iter().any(|&j| dominates_unchecked(&pop[j], &pop[i])));
                    }
                }
            }
        }
    }
}
