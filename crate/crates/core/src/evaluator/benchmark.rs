//! ZDT1 and DTLZ2 test problems with analytic reference fronts.

use std::fmt;
use std::str::FromStr;

use super::{EvalError, Problem};

/// Points sampled from each analytic front.
pub const REFERENCE_FRONT_SIZE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkId {
    Zdt1,
    Dtlz2,
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchmarkId::Zdt1 => "zdt1",
            BenchmarkId::Dtlz2 => "dtlz2",
        })
    }
}

impl FromStr for BenchmarkId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "zdt1" => Ok(BenchmarkId::Zdt1),
            "dtlz2" => Ok(BenchmarkId::Dtlz2),
            other => Err(format!(
                "unknown benchmark '{other}' (expected zdt1 or dtlz2)"
            )),
        }
    }
}

impl BenchmarkId {
    /// The problem instance with its standard dimensions.
    pub fn problem(self) -> Box<dyn Problem> {
        match self {
            BenchmarkId::Zdt1 => Box::new(Zdt1::default()),
            BenchmarkId::Dtlz2 => Box::new(Dtlz2::default()),
        }
    }
}

/// Objective values of `id` at `x` for the standard dimensions
/// (ZDT1: n = 30, DTLZ2: M = 3, n = 12).
pub fn benchmark_evaluate(id: BenchmarkId, x: &[f64]) -> Result<Vec<f64>, EvalError> {
    id.problem().evaluate(x)
}

fn check_len(expected: usize, x: &[f64]) -> Result<(), EvalError> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(EvalError::DimensionMismatch {
            expected,
            got: x.len(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Zdt1 {
    low: Vec<f64>,
    high: Vec<f64>,
}

impl Zdt1 {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "ZDT1 needs at least two variables");
        Zdt1 {
            low: vec![0.0; n],
            high: vec![1.0; n],
        }
    }
}

impl Default for Zdt1 {
    fn default() -> Self {
        Zdt1::new(30)
    }
}

impl Problem for Zdt1 {
    fn name(&self) -> &str {
        "zdt1"
    }

    fn dimension(&self) -> usize {
        self.low.len()
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn lower_bounds(&self) -> &[f64] {
        &self.low
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.high
    }

    fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>, EvalError> {
        check_len(self.dimension(), x)?;
        let f1 = x[0];
        let g = 1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64;
        let f2 = g * (1.0 - (f1 / g).sqrt());
        Ok(vec![f1, f2])
    }

    fn reference_front(&self) -> Option<Vec<Vec<f64>>> {
        let last = (REFERENCE_FRONT_SIZE - 1) as f64;
        Some(
            (0..REFERENCE_FRONT_SIZE)
                .map(|i| {
                    let f1 = i as f64 / last;
                    vec![f1, 1.0 - f1.sqrt()]
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Dtlz2 {
    objectives: usize,
    low: Vec<f64>,
    high: Vec<f64>,
}

impl Dtlz2 {
    /// `objectives` objectives over `n >= objectives` variables.
    pub fn new(objectives: usize, n: usize) -> Self {
        assert!(
            objectives >= 2 && n >= objectives,
            "DTLZ2 needs M >= 2 and n >= M"
        );
        Dtlz2 {
            objectives,
            low: vec![0.0; n],
            high: vec![1.0; n],
        }
    }
}

impl Default for Dtlz2 {
    fn default() -> Self {
        Dtlz2::new(3, 12)
    }
}

impl Problem for Dtlz2 {
    fn name(&self) -> &str {
        "dtlz2"
    }

    fn dimension(&self) -> usize {
        self.low.len()
    }

    fn num_objectives(&self) -> usize {
        self.objectives
    }

    fn lower_bounds(&self) -> &[f64] {
        &self.low
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.high
    }

    fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>, EvalError> {
        check_len(self.dimension(), x)?;
        let m = self.objectives;
        let g: f64 = x[m - 1..].iter().map(|v| (v - 0.5) * (v - 0.5)).sum();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let f = (0..m)
            .map(|i| {
                let mut v = 1.0 + g;
                for xj in &x[..m - 1 - i] {
                    v *= (xj * half_pi).cos();
                }
                if i > 0 {
                    v *= (x[m - 1 - i] * half_pi).sin();
                }
                v
            })
            .collect();
        Ok(f)
    }

    /// Equal-area spiral lattice on the positive unit-sphere octant; only
    /// defined for three objectives.
    fn reference_front(&self) -> Option<Vec<Vec<f64>>> {
        if self.objectives != 3 {
            return None;
        }
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let n = REFERENCE_FRONT_SIZE as f64;
        Some(
            (0..REFERENCE_FRONT_SIZE)
                .map(|i| {
                    let z = (i as f64 + 0.5) / n;
                    let r = (1.0 - z * z).sqrt();
                    let phi = (i as f64 * golden).fract() * std::f64::consts::FRAC_PI_2;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect(),
        )
    }
}
