//! Diversity preservation: fitness sharing, Das–Dennis reference points and
//! reference-point niching.

mod niching;
mod reference;
mod sharing;

use thiserror::Error;

pub use niching::{associate, normalize, nsga3_select, Association};
pub use reference::{binomial, das_dennis, ReferencePointSet};
pub use sharing::{
    niche_count, niche_counts, normalize_objectives, shared_fitness, sharing_value, SharingConfig,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiversityError {
    #[error("sharing radius and exponent must be positive (sigma_share = {sigma_share}, alpha = {alpha})")]
    InvalidSharing { sigma_share: f64, alpha: f64 },
    #[error("reference lattice needs at least 2 objectives and 1 division (got M = {objectives}, p = {divisions})")]
    InvalidLattice { objectives: usize, divisions: usize },
}
