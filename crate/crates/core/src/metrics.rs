//! Quality indicators and run statistics.

use thiserror::Error;

use crate::dominance::dominates_unchecked;
use crate::genome::{AntennaGenome, FixedDesign};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("indicator needs a non-empty {0} set")]
    EmptySet(&'static str),
    #[error("reference front members must be mutually non-dominated")]
    DominatedReference,
}

/// A non-empty, mutually non-dominated set of objective vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront<T> {
    points: Vec<Vec<T>>,
}

impl<T: Scalar> ReferenceFront<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self, MetricsError> {
        if points.is_empty() {
            return Err(MetricsError::EmptySet("reference"));
        }
        for a in &points {
            if points.iter().any(|b| dominates_unchecked(b, a)) {
                return Err(MetricsError::DominatedReference);
            }
        }
        Ok(ReferenceFront { points })
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }
}

fn nearest_distance_sq<T: Scalar, V: AsRef<[T]>>(p: &[T], set: &[V]) -> T {
    set.iter()
        .map(|q| {
            p.iter()
                .zip(q.as_ref())
                .fold(T::zero(), |s, (&a, &b)| s + (a - b) * (a - b))
        })
        .fold(T::infinity(), T::min)
}

/// Generational distance: `sqrt(sum d_i^2) / |A|`, with `d_i` the distance
/// from the i-th member of `obtained` to its nearest member of `reference`.
pub fn gd<T: Scalar, A: AsRef<[T]>, B: AsRef<[T]>>(
    obtained: &[A],
    reference: &[B],
) -> Result<T, MetricsError> {
    if obtained.is_empty() {
        return Err(MetricsError::EmptySet("obtained"));
    }
    if reference.is_empty() {
        return Err(MetricsError::EmptySet("reference"));
    }
    let sum = obtained
        .iter()
        .map(|a| nearest_distance_sq(a.as_ref(), reference))
        .fold(T::zero(), |s, d| s + d);
    Ok(sum.sqrt() / T::from_count(obtained.len()))
}

/// Inverted generational distance: `sqrt(sum d_i^2) / |P*|`, with `d_i` the
/// distance from the i-th reference member to its nearest obtained member.
pub fn igd<T: Scalar, A: AsRef<[T]>, B: AsRef<[T]>>(
    obtained: &[A],
    reference: &[B],
) -> Result<T, MetricsError> {
    if reference.is_empty() {
        return Err(MetricsError::EmptySet("reference"));
    }
    if obtained.is_empty() {
        return Err(MetricsError::EmptySet("obtained"));
    }
    let mut sum = T::zero();
    for r in reference {
        sum += nearest_distance_sq(r.as_ref(), obtained);
    }
    Ok(sum.sqrt() / T::from_count(reference.len()))
}

/// Relative change of the best fitness between consecutive generations,
/// `|F_g - F_{g-1}| / max(1, |F_{g-1}|)`, for `g = 2..=G`.
pub fn convergence_speed<T: Scalar>(best: &[T]) -> Vec<T> {
    best.windows(2)
        .map(|w| (w[1] - w[0]).abs() / T::one().max(w[0].abs()))
        .collect()
}

/// Mean over genes of the per-gene population standard deviation (divisor `n`).
pub fn population_diversity<T: Scalar, V: AsRef<[T]>>(genes: &[V]) -> T {
    let Some(first) = genes.first() else {
        return T::zero();
    };
    let dim = first.as_ref().len();
    if dim == 0 {
        return T::zero();
    }
    let n = T::from_count(genes.len());
    let mut total = T::zero();
    for k in 0..dim {
        let mean = genes.iter().fold(T::zero(), |s, g| s + g.as_ref()[k]) / n;
        let var = genes.iter().fold(T::zero(), |s, g| {
            let d = g.as_ref()[k] - mean;
            s + d * d
        }) / n;
        total += var.sqrt();
    }
    total / T::from_count(dim)
}

/// Ground-plane footprint reduction against the reference substrate, in
/// percent: `100 (Ws Ls - Wg Lg) / (Ws Ls)`.
pub fn size_reduction(genome: &AntennaGenome, fixed: &FixedDesign) -> f64 {
    let reference = fixed.ws * fixed.ls;
    100.0 * (reference - genome.wg * genome.lg) / reference
}

/// One-line description of [`size_reduction`] for reports.
pub const SIZE_REDUCTION_DEFINITION: &str =
    "size reduction = 100 * (Ws*Ls - Wg*Lg) / (Ws*Ls), ground footprint vs the 41.64 x 37.93 mm substrate";
