//! The CSRR antenna design vector, its bounds and fixed design constants,
//! constraint repair, and the variation operators shared by every engine.

mod repair;
mod variation;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use repair::{is_feasible, repair};
pub use variation::{polynomial_mutation, sbx_crossover, VariationConfig};

/// Number of optimized antenna parameters.
pub const GENE_COUNT: usize = 10;

/// Gene names in storage order.
pub const GENE_NAMES: [&str; GENE_COUNT] =
    ["R1", "R2", "R3", "R4", "Vr", "Ur", "Wg", "Lg", "Wp", "Lp"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenomeError {
    #[error("no feasible design exists inside the parameter bounds ({0})")]
    InfeasibleBounds(String),
    #[error("invalid bounds for {name}: [{low}, {high}]")]
    InvalidBounds {
        name: &'static str,
        low: f64,
        high: f64,
    },
    #[error("expected {GENE_COUNT} genes, got {0}")]
    WrongLength(usize),
}

/// Ten optimized antenna dimensions, all in millimetres.
///
/// `r1 > r2 > r3 > r4` are the radii of the outer and inner CSRR ring pairs,
/// `vr`/`ur` the ring-centre offset from the ground-plane centre, `wg`/`lg`
/// the ground plane and `wp`/`lp` the radiating patch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntennaGenome {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    pub vr: f64,
    pub ur: f64,
    pub wg: f64,
    pub lg: f64,
    pub wp: f64,
    pub lp: f64,
}

impl AntennaGenome {
    /// The reference design: ground equal to the substrate, rings centred.
    pub fn nominal() -> Self {
        Self::from_array(NOMINAL)
    }

    pub fn from_array(g: [f64; GENE_COUNT]) -> Self {
        let [r1, r2, r3, r4, vr, ur, wg, lg, wp, lp] = g;
        AntennaGenome {
            r1,
            r2,
            r3,
            r4,
            vr,
            ur,
            wg,
            lg,
            wp,
            lp,
        }
    }

    pub fn from_slice(g: &[f64]) -> Result<Self, GenomeError> {
        let arr: [f64; GENE_COUNT] = g
            .try_into()
            .map_err(|_| GenomeError::WrongLength(g.len()))?;
        Ok(Self::from_array(arr))
    }

    pub fn to_array(&self) -> [f64; GENE_COUNT] {
        [
            self.r1, self.r2, self.r3, self.r4, self.vr, self.ur, self.wg, self.lg, self.wp,
            self.lp,
        ]
    }

    pub fn outer_mean_radius(&self) -> f64 {
        0.5 * (self.r1 + self.r2)
    }

    pub fn inner_mean_radius(&self) -> f64 {
        0.5 * (self.r3 + self.r4)
    }
}

const NOMINAL: [f64; GENE_COUNT] = [
    12.38, 11.88, 8.25, 7.75, 0.0, 0.0, 41.64, 37.93, 22.8, 18.55,
];

/// Constants of the reference design that are not optimized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedDesign {
    /// Substrate width (mm).
    pub ws: f64,
    /// Substrate length (mm).
    pub ls: f64,
    /// Substrate thickness (mm).
    pub h: f64,
    pub feed_length: f64,
    pub feed_width: f64,
    pub slot_d: f64,
    pub slot_s: f64,
    /// Outer ring slot width (mm).
    pub d1: f64,
    /// Inner ring slot width (mm).
    pub d2: f64,
    pub s: f64,
    /// Ring split gap (mm).
    pub gap: f64,
    pub eps_r: f64,
    pub tan_delta: f64,
}

impl Default for FixedDesign {
    fn default() -> Self {
        FixedDesign {
            ws: 41.64,
            ls: 37.93,
            h: 1.57,
            feed_length: 14.3,
            feed_width: 4.85,
            slot_d: 5.02,
            slot_s: 3.1,
            d1: 0.5,
            d2: 0.5,
            s: 5.0,
            gap: 1.5,
            eps_r: 2.2,
            tan_delta: 0.0009,
        }
    }
}

/// Geometric clearances used by [`repair`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryConstraints {
    /// Minimum radial separation between consecutive radii (mm).
    pub ring_separation: f64,
    /// Distance kept between the outer ring and the ground-plane edge (mm).
    pub ground_margin: f64,
    /// Distance kept between the patch and the ground-plane edge, per side (mm).
    pub patch_clearance: f64,
}

impl Default for GeometryConstraints {
    fn default() -> Self {
        GeometryConstraints {
            ring_separation: FixedDesign::default().d1,
            ground_margin: 1.0,
            patch_clearance: 1.0,
        }
    }
}

/// Per-gene search interval plus the geometric clearances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterBounds {
    pub low: [f64; GENE_COUNT],
    pub high: [f64; GENE_COUNT],
    pub constraints: GeometryConstraints,
}

/// Half-width of the default ring-offset interval (mm).
pub const DEFAULT_OFFSET_LIMIT: f64 = 8.0;

impl Default for ParameterBounds {
    /// `[0.70, 1.05]` times the nominal value for every dimension and
    /// `[-8, 8]` mm for the ring offsets.
    fn default() -> Self {
        let mut low = [0.0; GENE_COUNT];
        let mut high = [0.0; GENE_COUNT];
        for (i, &v) in NOMINAL.iter().enumerate() {
            if i == 4 || i == 5 {
                low[i] = -DEFAULT_OFFSET_LIMIT;
                high[i] = DEFAULT_OFFSET_LIMIT;
            } else {
                low[i] = 0.70 * v;
                high[i] = 1.05 * v;
            }
        }
        ParameterBounds {
            low,
            high,
            constraints: GeometryConstraints::default(),
        }
    }
}

impl ParameterBounds {
    /// Validates the intervals and probes that repair can reach a feasible
    /// design. Zero-width intervals are allowed.
    pub fn new(
        low: [f64; GENE_COUNT],
        high: [f64; GENE_COUNT],
        constraints: GeometryConstraints,
    ) -> Result<Self, GenomeError> {
        for i in 0..GENE_COUNT {
            if !(low[i].is_finite() && high[i].is_finite() && low[i] <= high[i]) {
                return Err(GenomeError::InvalidBounds {
                    name: GENE_NAMES[i],
                    low: low[i],
                    high: high[i],
                });
            }
        }
        let c = constraints;
        if !(c.ring_separation > 0.0 && c.ground_margin >= 0.0 && c.patch_clearance > 0.0) {
            return Err(GenomeError::InfeasibleBounds(
                "clearances must be positive".into(),
            ));
        }
        let bounds = ParameterBounds {
            low,
            high,
            constraints,
        };
        let mid: Vec<f64> = (0..GENE_COUNT).map(|i| 0.5 * (low[i] + high[i])).collect();
        for probe in [&low[..], &high[..], &mid[..]] {
            repair(probe, &bounds)?;
        }
        Ok(bounds)
    }

    /// Zero-width bounds pinned at `g`.
    pub fn pinned(g: &AntennaGenome) -> Result<Self, GenomeError> {
        let a = g.to_array();
        Self::new(a, a, GeometryConstraints::default())
    }

    pub fn contains(&self, g: &[f64]) -> bool {
        g.len() == GENE_COUNT
            && g.iter()
                .enumerate()
                .all(|(i, &x)| self.low[i] <= x && x <= self.high[i])
    }
}

/// Uniform sample inside `bounds`, repaired. Deterministic in `seed`.
pub fn random_genome(bounds: &ParameterBounds, seed: u64) -> Result<AntennaGenome, GenomeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_genome_with(bounds, &mut rng)
}

/// Uniform sample inside `bounds` drawn from `rng`, repaired.
pub fn random_genome_with<R: Rng + ?Sized>(
    bounds: &ParameterBounds,
    rng: &mut R,
) -> Result<AntennaGenome, GenomeError> {
    let raw = sample_uniform(&bounds.low, &bounds.high, rng);
    repair(&raw, bounds)
}

pub(crate) fn sample_uniform<R: Rng + ?Sized>(low: &[f64], high: &[f64], rng: &mut R) -> Vec<f64> {
    low.iter()
        .zip(high)
        .map(|(&lo, &hi)| if hi > lo { rng.gen_range(lo..=hi) } else { lo })
        .collect()
}

/// SBX crossover of two antenna genomes; both children are repaired.
pub fn crossover<R: Rng + ?Sized>(
    p1: &AntennaGenome,
    p2: &AntennaGenome,
    bounds: &ParameterBounds,
    cfg: &VariationConfig<f64>,
    rng: &mut R,
) -> Result<(AntennaGenome, AntennaGenome), GenomeError> {
    let (c1, c2) = sbx_crossover(
        &p1.to_array(),
        &p2.to_array(),
        &bounds.low,
        &bounds.high,
        cfg,
        rng,
    );
    Ok((repair(&c1, bounds)?, repair(&c2, bounds)?))
}

/// Polynomial mutation of an antenna genome, repaired.
pub fn mutate<R: Rng + ?Sized>(
    g: &AntennaGenome,
    bounds: &ParameterBounds,
    cfg: &VariationConfig<f64>,
    rng: &mut R,
) -> Result<AntennaGenome, GenomeError> {
    let m = polynomial_mutation(&g.to_array(), &bounds.low, &bounds.high, cfg, rng);
    repair(&m, bounds)
}
