//! Multi-objective genetic algorithms for constrained tri-band antenna design.
//!
//! The crate is organised bottom-up:
//!
//! - [`genome`]: the 10-gene CSRR antenna design vector, its bounds, constraint
//!   repair and the real-coded variation operators (SBX and polynomial mutation).
//! - [`evaluator`]: the [`Problem`] interface shared by every engine, the
//!   analytical tri-band surrogate, ZDT1/DTLZ2 benchmarks and the file-exchange
//!   evaluator for an external electromagnetic solver.
//! - [`dominance`]: Pareto dominance, Fonseca–Fleming ranking, fast
//!   non-dominated sorting and crowding distance.
//! - [`diversity`]: fitness sharing, Das–Dennis reference points and
//!   reference-point niching.
//! - [`engines`]: PGA, NSGA-I, NSGA-II, NSGA-III, SPEA and the weighted-sum
//!   scalarized GA on a shared generation loop.
//! - [`metrics`]: GD, IGD, convergence speed, population diversity and size
//!   reduction.
//! - [`experiment`]: run configuration, persisted run records and reports.
//!
//! The numerical kernels (dominance, sharing, reference points, indicators,
//! variation operators) are generic over [`Scalar`]; the aliases below pin them
//! to `f64`, which is what the engines use.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod diversity;
pub mod dominance;
pub mod engines;
pub mod evaluator;
pub mod experiment;
pub mod genome;
pub mod metrics;
mod scalar;

pub use scalar::Scalar;

pub use engines::{run, Algorithm, Individual, RunConfig, RunError, RunOutcome};
pub use evaluator::{EvalError, Problem};
pub use genome::{AntennaGenome, FixedDesign, GenomeError, ParameterBounds};

/// Objective vector in minimization sense.
pub type Objectives = Vec<f64>;
/// Das–Dennis lattice in double precision.
pub type ReferencePoints = diversity::ReferencePointSet<f64>;
/// Das–Dennis lattice in single precision.
pub type ReferencePointsF32 = diversity::ReferencePointSet<f32>;
/// Sharing parameters in double precision.
pub type Sharing = diversity::SharingConfig<f64>;
/// Sharing parameters in single precision.
pub type SharingF32 = diversity::SharingConfig<f32>;
/// Polynomial-mutation / SBX parameters in double precision.
pub type Variation = genome::VariationConfig<f64>;
