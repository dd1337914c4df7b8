use rand::seq::SliceRandom;
use rand::Rng;

use super::ReferencePointSet;
use crate::dominance::fast_nondominated_sort;
use crate::Scalar;

/// Nearest reference direction of one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Association<T> {
    pub reference: usize,
    /// Perpendicular distance from the point to the reference line.
    pub distance: T,
}

const ASF_EPS: f64 = 1e-6;

/// Translates `members` of `pop` by the ideal point and divides by the
/// hyperplane intercepts through the extreme points. Falls back to the
/// per-objective maximum of the translated values when the extreme points do
/// not span a usable hyperplane.
pub fn normalize<T: Scalar, V: AsRef<[T]>>(pop: &[V], members: &[usize]) -> Vec<Vec<T>> {
    if members.is_empty() {
        return Vec::new();
    }
    let m = pop[members[0]].as_ref().len();
    let mut ideal = vec![T::infinity(); m];
    for &i in members {
        for (k, &x) in pop[i].as_ref().iter().enumerate() {
            ideal[k] = ideal[k].min(x);
        }
    }
    let translated: Vec<Vec<T>> = members
        .iter()
        .map(|&i| {
            pop[i]
                .as_ref()
                .iter()
                .zip(&ideal)
                .map(|(&x, &z)| x - z)
                .collect()
        })
        .collect();

    let eps = T::lit(ASF_EPS);
    let extremes: Vec<Vec<T>> = (0..m)
        .map(|axis| {
            let asf = |f: &[T]| {
                f.iter()
                    .enumerate()
                    .map(|(k, &v)| v / if k == axis { T::one() } else { eps })
                    .fold(T::neg_infinity(), T::max)
            };
            translated
                .iter()
                .min_by(|a, b| {
                    asf(a)
                        .partial_cmp(&asf(b))
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .cloned()
                .expect("non-empty")
        })
        .collect();

    let intercepts = hyperplane_intercepts(&extremes).unwrap_or_else(|| {
        (0..m)
            .map(|k| translated.iter().map(|f| f[k]).fold(T::zero(), T::max))
            .collect()
    });

    translated
        .into_iter()
        .map(|f| {
            f.iter()
                .zip(&intercepts)
                .map(|(&v, &a)| if a > T::lit(1e-12) { v / a } else { v })
                .collect()
        })
        .collect()
}

/// Intercepts of the hyperplane through `extremes` (one point per axis), or
/// `None` if the system is singular or an intercept is not positive.
fn hyperplane_intercepts<T: Scalar>(extremes: &[Vec<T>]) -> Option<Vec<T>> {
    let m = extremes.len();
    // solve E b = 1, intercept_k = 1 / b_k
    let mut a: Vec<Vec<T>> = extremes
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(T::one());
            r
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if !(a[pivot][col].abs() > T::lit(1e-12)) {
            return None;
        }
        a.swap(col, pivot);
        for row in 0..m {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for k in col..=m {
                    let delta = factor * a[col][k];
                    a[row][k] -= delta;
                }
            }
        }
    }
    let intercepts: Vec<T> = (0..m).map(|k| a[k][k] / a[k][m]).collect();
    if intercepts
        .iter()
        .all(|&x| x.is_finite() && x > T::lit(1e-10))
    {
        Some(intercepts)
    } else {
        None
    }
}

/// Associates each normalized point with the reference direction at the
/// smallest perpendicular distance (lowest index on ties).
pub fn associate<T: Scalar>(
    normalized: &[Vec<T>],
    refs: &ReferencePointSet<T>,
) -> Vec<Association<T>> {
    normalized
        .iter()
        .map(|f| {
            let mut best = Association {
                reference: 0,
                distance: T::infinity(),
            };
            for (j, w) in refs.points().iter().enumerate() {
                let ww = w.iter().fold(T::zero(), |s, &x| s + x * x);
                let proj = f.iter().zip(w).fold(T::zero(), |s, (&a, &b)| s + a * b) / ww;
                let d = f
                    .iter()
                    .zip(w)
                    .fold(T::zero(), |s, (&a, &b)| {
                        let r = a - proj * b;
                        s + r * r
                    })
                    .sqrt();
                if d < best.distance {
                    best = Association {
                        reference: j,
                        distance: d,
                    };
                }
            }
            best
        })
        .collect()
}

/// Reference-point environmental selection: whole fronts while they fit, the
/// splitting front filled by niche-count-minimizing choice among reference
/// directions with random tie-breaks. Returns `n` indices into `pool`.
///
/// # Panics
///
/// If `pool` holds fewer than `n` members.
pub fn nsga3_select<T: Scalar, V: AsRef<[T]>, R: Rng + ?Sized>(
    pool: &[V],
    refs: &ReferencePointSet<T>,
    n: usize,
    rng: &mut R,
) -> Vec<usize> {
    assert!(
        pool.len() >= n,
        "pool smaller than the requested population"
    );
    let fronts = fast_nondominated_sort(pool);
    let mut selected = Vec::with_capacity(n);
    let mut splitting: &[usize] = &[];
    for front in &fronts {
        if selected.len() + front.len() <= n {
            selected.extend_from_slice(front);
            if selected.len() == n {
                return selected;
            }
        } else {
            splitting = front;
            break;
        }
    }
    if selected.len() == n {
        return selected;
    }

    let members: Vec<usize> = selected.iter().chain(splitting).copied().collect();
    let normalized = normalize(pool, &members);
    let assoc = associate(&normalized, refs);
    let (admitted, candidates) = assoc.split_at(selected.len());

    let mut niche = vec![0usize; refs.len()];
    for a in admitted {
        niche[a.reference] += 1;
    }
    let mut open: Vec<bool> = vec![true; refs.len()];
    let mut remaining: Vec<usize> = (0..splitting.len()).collect();

    while selected.len() < n {
        let min_count = (0..refs.len())
            .filter(|&j| open[j])
            .map(|j| niche[j])
            .min()
            .expect("an open reference direction remains while candidates exist");
        let tied: Vec<usize> = (0..refs.len())
            .filter(|&j| open[j] && niche[j] == min_count)
            .collect();
        let j = *tied.choose(rng).expect("non-empty");
        let attached: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&c| candidates[c].reference == j)
            .collect();
        if attached.is_empty() {
            open[j] = false;
            continue;
        }
        let pick = if niche[j] == 0 {
            *attached
                .iter()
                .min_by(|&&a, &&b| {
                    candidates[a]
                        .distance
                        .partial_cmp(&candidates[b].distance)
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(a.cmp(&b))
                })
                .expect("non-empty")
        } else {
            *attached.choose(rng).expect("non-empty")
        };
        selected.push(splitting[pick]);
        niche[j] += 1;
        remaining.retain(|&c| c != pick);
    }
    selected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diversity::das_dennis;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fronts_that_fit_exactly_are_taken_whole() {
        let pool = vec![
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
        ];
        let refs = das_dennis::<f64>(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(nsga3_select(&pool, &refs, 3, &mut rng), vec![0, 1, 2]);
    }

    #[test]
    fn single_survivor() {
        let pool = vec![vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]];
        let refs = das_dennis::<f64>(3, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(nsga3_select(&pool, &refs, 1, &mut rng), vec![0]);
    }

    #[test]
    fn split_front_spreads_over_distinct_directions() {
        // points placed on distinct lattice directions of a p = 2 simplex plus
        // near-duplicates; choosing 6 must hit 6 different directions
        let refs = das_dennis::<f64>(3, 2).unwrap();
        let mut pool: Vec<Vec<f64>> = refs.points().to_vec();
        for p in refs.points() {
            pool.push(p.iter().map(|x| x * 0.98 + 0.0066).collect());
        }
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let chosen = nsga3_select(&pool, &refs, 6, &mut rng);
            assert_eq!(chosen.len(), 6);
            let normalized = normalize(&pool, &(0..pool.len()).collect::<Vec<_>>());
            let assoc = associate(&normalized, &refs);
            let mut dirs: Vec<usize> = chosen.iter().map(|&i| assoc[i].reference).collect();
            dirs.sort_unstable();
            dirs.dedup();
            assert_eq!(dirs.len(), 6, "seed {seed}: {chosen:?}");
        }
    }

    #[test]
    fn never_drops_front_one_for_worse_front() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let refs = das_dennis::<f64>(3, 4).unwrap();
        for _ in 0..200 {
            let size = rng.gen_range(4..40);
            let pool: Vec<Vec<f64>> = (0..size)
                .map(|_| (0..3).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let n = rng.gen_range(1..=size);
            let chosen = nsga3_select(&pool, &refs, n, &mut rng);
            assert_eq!(chosen.len(), n);
            let fronts = fast_nondominated_sort(&pool);
            let rank = crate::dominance::front_ranks(&fronts, pool.len());
            let worst = chosen.iter().map(|&i| rank[i]).max().unwrap();
            for (i, &r) in rank.iter().enumerate() {
                if r < worst {
                    assert!(chosen.contains(&i));
                }
            }
        }
    }

    #[test]
    fn normalization_maps_extremes_to_unit_intercepts() {
        // ideal point (1, 1, 1); extremes translate to 2·e_k, so intercepts are 2
        let pool = vec![
            vec![3.0, 1.0, 1.0],
            vec![1.0, 3.0, 1.0],
            vec![1.0, 1.0, 3.0],
            vec![2.0, 2.0, 1.5],
        ];
        let n = normalize(&pool, &[0, 1, 2, 3]);
        assert_eq!(n[0], vec![1.0, 0.0, 0.0]);
        assert_eq!(n[1], vec![0.0, 1.0, 0.0]);
        assert_eq!(n[2], vec![0.0, 0.0, 1.0]);
        assert_eq!(n[3], vec![0.5, 0.5, 0.25]);
    }

    #[test]
    fn degenerate_extremes_fall_back_to_maxima() {
        // all points identical in the last objective -> singular system
        let pool = vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 2.0]];
        let n = normalize(&pool, &[0, 1]);
        assert_eq!(n, vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]]);
    }
}
