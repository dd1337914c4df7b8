use super::{AntennaGenome, GenomeError, ParameterBounds, GENE_COUNT, GENE_NAMES};

const R1: usize = 0;
const R4: usize = 3;
const VR: usize = 4;
const UR: usize = 5;
const WG: usize = 6;
const LG: usize = 7;
const WP: usize = 8;
const LP: usize = 9;

const MAX_PASSES: usize = 64;

/// Projects a raw 10-vector onto the feasible design set.
///
/// Each pass clamps to bounds, sorts the radii into descending order, shrinks
/// inner radii to keep the ring separation (raising them again where a lower
/// bound forces it), shrinks the outer radius and ring offsets so the rings
/// stay inside the ground plane, and shrinks the patch to fit on the ground.
/// Passes repeat until nothing moves, so the result is a fixed point: feasible
/// inputs come back unchanged and `repair(repair(v)) == repair(v)` exactly.
pub fn repair(raw: &[f64], bounds: &ParameterBounds) -> Result<AntennaGenome, GenomeError> {
    if raw.len() != GENE_COUNT {
        return Err(GenomeError::WrongLength(raw.len()));
    }
    let mut x = [0.0; GENE_COUNT];
    for i in 0..GENE_COUNT {
        x[i] = if raw[i].is_nan() {
            0.5 * (bounds.low[i] + bounds.high[i])
        } else {
            raw[i]
        };
    }
    for _ in 0..MAX_PASSES {
        if !repair_pass(&mut x, bounds) {
            return if is_feasible(&x, bounds) {
                Ok(AntennaGenome::from_array(x))
            } else {
                Err(GenomeError::InfeasibleBounds(describe_violation(
                    &x, bounds,
                )))
            };
        }
    }
    Err(GenomeError::InfeasibleBounds(describe_violation(
        &x, bounds,
    )))
}

/// One projection sweep; returns whether any gene moved.
fn repair_pass(x: &mut [f64; GENE_COUNT], b: &ParameterBounds) -> bool {
    let before = *x;
    let c = b.constraints;
    let sep = c.ring_separation;

    for i in 0..GENE_COUNT {
        x[i] = x[i].clamp(b.low[i], b.high[i]);
    }

    x[R1..=R4].sort_by(|a, b| b.total_cmp(a));
    for i in R1..R4 {
        if x[i + 1] > x[i] - sep {
            x[i + 1] = x[i] - sep;
        }
    }
    for i in (R1..R4).rev() {
        if x[i + 1] < b.low[i + 1] {
            x[i + 1] = b.low[i + 1];
        }
        if x[i + 1] > x[i] - sep {
            x[i] = x[i + 1] + sep;
        }
    }

    for (offset, ground) in [(VR, WG), (UR, LG)] {
        let room = x[ground] / 2.0 - c.ground_margin;
        if x[R1] > room {
            x[R1] = room;
        }
        let limit = room - x[R1];
        if x[offset].abs() > limit {
            x[offset] = limit.copysign(x[offset]);
        }
    }

    for (patch, ground) in [(WP, WG), (LP, LG)] {
        let room = x[ground] - 2.0 * c.patch_clearance;
        if x[patch] > room {
            x[patch] = room;
        }
    }

    x.iter()
        .zip(&before)
        .any(|(a, b)| a.to_bits() != b.to_bits())
}

/// Exact feasibility test in the same arithmetic form that [`repair`] uses.
pub fn is_feasible(x: &[f64], b: &ParameterBounds) -> bool {
    first_violation(x, b).is_none()
}

fn first_violation(x: &[f64], b: &ParameterBounds) -> Option<String> {
    if x.len() != GENE_COUNT {
        return Some(format!("expected {GENE_COUNT} genes"));
    }
    let c = b.constraints;
    for i in 0..GENE_COUNT {
        if !(b.low[i] <= x[i] && x[i] <= b.high[i]) {
            return Some(format!(
                "{} = {} outside [{}, {}]",
                GENE_NAMES[i], x[i], b.low[i], b.high[i]
            ));
        }
    }
    for i in R1..R4 {
        if x[i + 1] > x[i] - c.ring_separation {
            return Some(format!(
                "{} too close to {}",
                GENE_NAMES[i + 1],
                GENE_NAMES[i]
            ));
        }
    }
    for (offset, ground) in [(VR, WG), (UR, LG)] {
        let room = x[ground] / 2.0 - c.ground_margin;
        if x[R1] > room || x[offset].abs() > room - x[R1] {
            return Some(format!(
                "rings leave the ground plane along {}",
                GENE_NAMES[ground]
            ));
        }
    }
    for (patch, ground) in [(WP, WG), (LP, LG)] {
        if x[patch] > x[ground] - 2.0 * c.patch_clearance {
            return Some(format!(
                "{} does not fit on {}",
                GENE_NAMES[patch], GENE_NAMES[ground]
            ));
        }
    }
    None
}

fn describe_violation(x: &[f64], b: &ParameterBounds) -> String {
    first_violation(x, b).unwrap_or_else(|| "repair did not converge".into())
}
