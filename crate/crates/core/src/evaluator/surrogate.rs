//! Analytical tri-band S11 surrogate.
//!
//! Three Lorentzian dips sit on a flat baseline: the patch resonance from the
//! transmission-line model, and one quasi-static resonance per CSRR ring pair
//! whose frequency scales inversely with the pair's mean radius. Ring dips
//! weaken as the ring centre moves away from the ground-plane centre.

use serde::{Deserialize, Serialize};

use super::response::FrequencyResponse;
use crate::genome::{AntennaGenome, FixedDesign};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Sweep span and step of the sampled response (GHz).
pub const SWEEP_START_GHZ: f64 = 1.0;
pub const SWEEP_STOP_GHZ: f64 = 7.0;
pub const SWEEP_STEP_MHZ: u32 = 5;

/// Frequency the nominal outer ring pair is calibrated to (GHz).
pub const OUTER_RING_TARGET_GHZ: f64 = 2.4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurrogateConfig {
    /// Ring-frequency calibration constant (dimensionless).
    pub kappa: f64,
    /// Patch dip depth (dB).
    pub patch_depth: f64,
    /// Outer ring dip depth (dB).
    pub outer_depth: f64,
    /// Inner ring dip depth (dB).
    pub inner_depth: f64,
    /// Patch dip half-width (GHz).
    pub patch_width: f64,
    /// Ring dip half-width (GHz).
    pub ring_width: f64,
    /// Ring coupling falloff with centre offset (mm).
    pub sigma_pos: f64,
    /// Off-resonance S11 level (dB).
    pub baseline: f64,
}

impl SurrogateConfig {
    /// Default dips with `kappa` fixed so the nominal outer ring pair of
    /// `fixed` resonates at 2.4 GHz.
    pub fn calibrated(fixed: &FixedDesign) -> Self {
        SurrogateConfig {
            kappa: calibrate_kappa(fixed),
            patch_depth: 30.0,
            outer_depth: 25.0,
            inner_depth: 20.0,
            patch_width: 0.20,
            ring_width: 0.12,
            sigma_pos: 6.0,
            baseline: -0.5,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("kappa", self.kappa),
            ("sigma_pos", self.sigma_pos),
            ("patch_width", self.patch_width),
            ("ring_width", self.ring_width),
        ];
        for (name, v) in positive {
            if !(v > 0.0) {
                return Err(format!("{name} must be positive"));
            }
        }
        for (name, v) in [
            ("patch_depth", self.patch_depth),
            ("outer_depth", self.outer_depth),
            ("inner_depth", self.inner_depth),
        ] {
            if !(v >= 0.0) {
                return Err(format!("{name} must be non-negative"));
            }
        }
        if !(-3.0..=0.0).contains(&self.baseline) {
            return Err("baseline must lie in [-3, 0] dB".into());
        }
        Ok(())
    }
}

impl Default for SurrogateConfig {
    fn default() -> Self {
        Self::calibrated(&FixedDesign::default())
    }
}

/// Effective permittivity of a microstrip of width `w` on height `h` (same units).
pub fn effective_permittivity(eps_r: f64, h: f64, w: f64) -> f64 {
    (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 / (1.0 + 12.0 * h / w).sqrt()
}

/// Fringing length extension of a patch edge, in the units of `h`.
pub fn length_extension(eps_eff: f64, h: f64, w: f64) -> f64 {
    0.412 * h * (eps_eff + 0.3) * (w / h + 0.264) / ((eps_eff - 0.258) * (w / h + 0.8))
}

/// Fundamental resonance of the rectangular patch (GHz).
pub fn patch_resonance(genome: &AntennaGenome, fixed: &FixedDesign) -> f64 {
    let eps_eff = effective_permittivity(fixed.eps_r, fixed.h, genome.wp);
    let dl = length_extension(eps_eff, fixed.h, genome.wp);
    let effective_length_m = (genome.lp + 2.0 * dl) * 1e-3;
    SPEED_OF_LIGHT / (2.0 * effective_length_m * eps_eff.sqrt()) / 1e9
}

/// Quasi-static ring resonance for a ring pair of mean radius `mean_radius`
/// (mm), in GHz.
pub fn ring_resonance(mean_radius: f64, eps_eff: f64, kappa: f64) -> f64 {
    kappa * SPEED_OF_LIGHT
        / (2.0 * std::f64::consts::PI * mean_radius * 1e-3 * eps_eff.sqrt())
        / 1e9
}

/// Permittivity seen by the ground-plane rings: the mean of substrate and air.
pub fn ring_permittivity(fixed: &FixedDesign) -> f64 {
    (fixed.eps_r + 1.0) / 2.0
}

/// The `kappa` that puts the nominal outer ring pair at 2.4 GHz.
pub fn calibrate_kappa(fixed: &FixedDesign) -> f64 {
    let nominal = AntennaGenome::nominal();
    OUTER_RING_TARGET_GHZ
        / ring_resonance(nominal.outer_mean_radius(), ring_permittivity(fixed), 1.0)
}

/// Ring coupling factor in `(0, 1]` for a centre offset `(vr, ur)`.
pub fn ring_coupling(vr: f64, ur: f64, sigma_pos: f64) -> f64 {
    (-(vr * vr + ur * ur) / (2.0 * sigma_pos * sigma_pos)).exp()
}

/// Resonance frequencies (GHz) of patch, outer ring and inner ring.
pub fn resonances(genome: &AntennaGenome, fixed: &FixedDesign, cfg: &SurrogateConfig) -> [f64; 3] {
    let eps_ring = ring_permittivity(fixed);
    [
        patch_resonance(genome, fixed),
        ring_resonance(genome.outer_mean_radius(), eps_ring, cfg.kappa),
        ring_resonance(genome.inner_mean_radius(), eps_ring, cfg.kappa),
    ]
}

/// S11 in dB at a single frequency.
pub fn s11_at(
    genome: &AntennaGenome,
    fixed: &FixedDesign,
    cfg: &SurrogateConfig,
    freq: f64,
) -> f64 {
    let [fp, fo, fi] = resonances(genome, fixed, cfg);
    let coupling = ring_coupling(genome.vr, genome.ur, cfg.sigma_pos);
    let dip = |depth: f64, centre: f64, width: f64| {
        let x = (freq - centre) / width;
        depth / (1.0 + x * x)
    };
    cfg.baseline
        - dip(cfg.patch_depth, fp, cfg.patch_width)
        - coupling * dip(cfg.outer_depth, fo, cfg.ring_width)
        - coupling * dip(cfg.inner_depth, fi, cfg.ring_width)
}

/// Sampled response on `[1, 7]` GHz in 5 MHz steps.
pub fn surrogate_response(
    genome: &AntennaGenome,
    fixed: &FixedDesign,
    cfg: &SurrogateConfig,
) -> FrequencyResponse {
    let start_mhz = (SWEEP_START_GHZ * 1000.0).round() as u32;
    let stop_mhz = (SWEEP_STOP_GHZ * 1000.0).round() as u32;
    let samples = (start_mhz..=stop_mhz)
        .step_by(SWEEP_STEP_MHZ as usize)
        .map(|mhz| {
            let f = f64::from(mhz) / 1000.0;
            (f, s11_at(genome, fixed, cfg, f))
        })
        .collect();
    FrequencyResponse::new(samples).expect("sweep frequencies increase")
}
