use serde::{Deserialize, Serialize};

use super::DiversityError;
use crate::Scalar;

/// Niche radius and sharing exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharingConfig<T> {
    pub sigma_share: T,
    pub alpha: T,
}

impl<T: Scalar> SharingConfig<T> {
    pub fn new(sigma_share: T, alpha: T) -> Result<Self, DiversityError> {
        if sigma_share > T::zero() && alpha > T::zero() {
            Ok(SharingConfig { sigma_share, alpha })
        } else {
            Err(DiversityError::InvalidSharing {
                sigma_share: sigma_share.to_f64().unwrap_or(f64::NAN),
                alpha: alpha.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

impl<T: Scalar> Default for SharingConfig<T> {
    fn default() -> Self {
        SharingConfig {
            sigma_share: T::lit(0.1),
            alpha: T::one(),
        }
    }
}

/// `1 - (d / sigma)^alpha` inside the niche, `0` outside.
pub fn sharing_value<T: Scalar>(d: T, cfg: &SharingConfig<T>) -> T {
    if d < cfg.sigma_share {
        T::one() - (d / cfg.sigma_share).powf(cfg.alpha)
    } else {
        T::zero()
    }
}

fn distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
        .sqrt()
}

/// Niche count of member `i`: the sum of sharing values to every member of
/// `points`, itself included.
pub fn niche_count<T: Scalar, V: AsRef<[T]>>(i: usize, points: &[V], cfg: &SharingConfig<T>) -> T {
    let pi = points[i].as_ref();
    points
        .iter()
        .map(|p| sharing_value(distance(pi, p.as_ref()), cfg))
        .fold(T::zero(), |a, b| a + b)
}

/// Niche counts of the members listed in `group`, counting only neighbours
/// inside that group.
pub fn niche_counts<T: Scalar, V: AsRef<[T]>>(
    points: &[V],
    group: &[usize],
    cfg: &SharingConfig<T>,
) -> Vec<T> {
    group
        .iter()
        .map(|&i| {
            group
                .iter()
                .map(|&j| sharing_value(distance(points[i].as_ref(), points[j].as_ref()), cfg))
                .fold(T::zero(), |a, b| a + b)
        })
        .collect()
}

/// Divides each dummy fitness by the member's niche count over `points`.
pub fn shared_fitness<T: Scalar, V: AsRef<[T]>>(
    points: &[V],
    dummy: &[T],
    cfg: &SharingConfig<T>,
) -> Vec<T> {
    (0..points.len())
        .map(|i| dummy[i] / niche_count(i, points, cfg))
        .collect()
}

/// Rescales every objective to `[0, 1]` by its min/max over `pop`; an
/// objective with zero range maps to `0`.
pub fn normalize_objectives<T: Scalar, V: AsRef<[T]>>(pop: &[V]) -> Vec<Vec<T>> {
    let Some(first) = pop.first() else {
        return Vec::new();
    };
    let m = first.as_ref().len();
    let mut lo = vec![T::infinity(); m];
    let mut hi = vec![T::neg_infinity(); m];
    for v in pop {
        for (k, &x) in v.as_ref().iter().enumerate() {
            lo[k] = lo[k].min(x);
            hi[k] = hi[k].max(x);
        }
    }
    pop.iter()
        .map(|v| {
            v.as_ref()
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    let range = hi[k] - lo[k];
                    if range > T::zero() {
                        (x - lo[k]) / range
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect()
}
