use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::Scalar;

/// Real-coded variation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig<T> {
    /// Probability that a parent pair is recombined at all.
    pub crossover_rate: T,
    /// SBX distribution index.
    pub crossover_eta: T,
    /// Per-gene mutation probability; `None` means `1 / n`.
    pub mutation_rate: Option<T>,
    /// Polynomial mutation distribution index.
    pub mutation_eta: T,
}

impl<T: Scalar> Default for VariationConfig<T> {
    fn default() -> Self {
        VariationConfig {
            crossover_rate: T::lit(0.9),
            crossover_eta: T::lit(15.0),
            mutation_rate: None,
            mutation_eta: T::lit(20.0),
        }
    }
}

impl<T: Scalar> VariationConfig<T> {
    pub fn mutation_rate_for(&self, n: usize) -> T {
        self.mutation_rate
            .unwrap_or_else(|| T::one() / T::from_count(n.max(1)))
    }
}

fn uniform<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.gen::<f64>())
}

/// Bounded simulated binary crossover.
///
/// With probability `crossover_rate` each gene pair is recombined with
/// probability one half; otherwise the parents are copied.
pub fn sbx_crossover<T: Scalar, R: Rng + ?Sized>(
    p1: &[T],
    p2: &[T],
    low: &[T],
    high: &[T],
    cfg: &VariationConfig<T>,
    rng: &mut R,
) -> (Vec<T>, Vec<T>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if !(uniform::<T, R>(rng) < cfg.crossover_rate) {
        return (c1, c2);
    }
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let eta = cfg.crossover_eta;
    let exponent = one / (eta + one);

    for i in 0..p1.len() {
        if uniform::<T, R>(rng) > half {
            continue;
        }
        let (lo, hi) = (low[i], high[i]);
        if (p1[i] - p2[i]).abs() <= T::lit(1e-14) || !(hi > lo) {
            continue;
        }
        let y1 = p1[i].min(p2[i]);
        let y2 = p1[i].max(p2[i]);
        let u: T = uniform(rng);

        let spread = |bound_gap: T| -> T {
            let beta = one + two * bound_gap / (y2 - y1);
            let alpha = two - beta.powf(-(eta + one));
            if u <= one / alpha {
                (u * alpha).powf(exponent)
            } else {
                (one / (two - u * alpha)).powf(exponent)
            }
        };
        let bq_low = spread(y1 - lo);
        let bq_high = spread(hi - y2);
        let a = (half * ((y1 + y2) - bq_low * (y2 - y1))).max(lo).min(hi);
        let b = (half * ((y1 + y2) + bq_high * (y2 - y1))).max(lo).min(hi);

        if uniform::<T, R>(rng) <= half {
            c1[i] = b;
            c2[i] = a;
        } else {
            c1[i] = a;
            c2[i] = b;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation; each gene mutates with the configured rate.
pub fn polynomial_mutation<T: Scalar, R: Rng + ?Sized>(
    x: &[T],
    low: &[T],
    high: &[T],
    cfg: &VariationConfig<T>,
    rng: &mut R,
) -> Vec<T> {
    let rate = cfg.mutation_rate_for(x.len());
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let eta = cfg.mutation_eta;
    let exponent = one / (eta + one);
    let mut out = x.to_vec();

    for i in 0..x.len() {
        if !(uniform::<T, R>(rng) < rate) {
            continue;
        }
        let (lo, hi) = (low[i], high[i]);
        if !(hi > lo) {
            continue;
        }
        let y = x[i].max(lo).min(hi);
        let span = hi - lo;
        let d1 = (y - lo) / span;
        let d2 = (hi - y) / span;
        let u: T = uniform(rng);
        let deltaq = if u < half {
            let v = two * u + (one - two * u) * (one - d1).powf(eta + one);
            v.powf(exponent) - one
        } else {
            let v = two * (one - u) + two * (u - half) * (one - d2).powf(eta + one);
            one - v.powf(exponent)
        };
        out[i] = (y + deltaq * span).max(lo).min(hi);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn children_stay_inside_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = VariationConfig::<f64> {
            crossover_rate: 1.0,
            mutation_rate: Some(1.0),
            ..Default::default()
        };
        let low = [0.0; 5];
        let high = [1.0; 5];
        for _ in 0..5000 {
            let p1: Vec<f64> = (0..5).map(|_| rng.gen()).collect();
            let p2: Vec<f64> = (0..5).map(|_| rng.gen()).collect();
            let (c1, c2) = sbx_crossover(&p1, &p2, &low, &high, &cfg, &mut rng);
            let m = polynomial_mutation(&c1, &low, &high, &cfg, &mut rng);
            for v in c1.iter().chain(&c2).chain(&m) {
                assert!((0.0..=1.0).contains(v));
            }
        }
    }

    #[test]
    fn sbx_preserves_the_parent_mean_when_unclipped() {
        // with wide bounds the two children are symmetric about the parents' midpoint
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = VariationConfig::<f64> {
            crossover_rate: 1.0,
            ..Default::default()
        };
        let (p1, p2) = ([0.4], [0.6]);
        for _ in 0..1000 {
            let (c1, c2) = sbx_crossover(&p1, &p2, &[-1e6], &[1e6], &cfg, &mut rng);
            assert!((c1[0] + c2[0] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn default_mutation_rate_is_one_over_n() {
        let cfg = VariationConfig::<f32>::default();
        assert_eq!(cfg.mutation_rate_for(10), 0.1);
    }

    #[test]
    fn single_precision_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = VariationConfig::<f32> {
            crossover_rate: 1.0,
            mutation_rate: Some(1.0),
            ..Default::default()
        };
        let (c1, _) = sbx_crossover(
            &[0.2f32, 0.9],
            &[0.7, 0.1],
            &[0.0; 2],
            &[1.0; 2],
            &cfg,
            &mut rng,
        );
        let m = polynomial_mutation(&c1, &[0.0; 2], &[1.0; 2], &cfg, &mut rng);
        assert!(m.iter().all(|v| (0.0..=1.0).contains(v)));
    }
}
