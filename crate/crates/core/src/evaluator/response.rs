use super::{EvalError, ObjectiveVector};

/// The three target bands in GHz.
pub const TARGET_FREQUENCIES_GHZ: [f64; 3] = [2.4, 3.6, 5.2];

/// Sampled S11 curve; frequencies in GHz, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyResponse {
    samples: Vec<(f64, f64)>,
}

impl FrequencyResponse {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self, EvalError> {
        for (i, &(f, s)) in samples.iter().enumerate() {
            if !f.is_finite() || !s.is_finite() {
                return Err(EvalError::MalformedTable(format!(
                    "non-finite sample at row {}",
                    i + 1
                )));
            }
            if i > 0 && f <= samples[i - 1].0 {
                return Err(EvalError::MalformedTable(format!(
                    "frequency {f} at row {} does not increase",
                    i + 1
                )));
            }
        }
        Ok(FrequencyResponse { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Linear interpolation of S11 at `freq`; a sample frequency returns its
    /// sample value exactly.
    pub fn interpolate(&self, freq: f64) -> Result<f64, EvalError> {
        let s = &self.samples;
        match s.binary_search_by(|(f, _)| f.total_cmp(&freq)) {
            Ok(i) => Ok(s[i].1),
            Err(i) if i == 0 || i == s.len() => Err(EvalError::OutOfRange(freq)),
            Err(i) => {
                let (f0, v0) = s[i - 1];
                let (f1, v1) = s[i];
                Ok(v0 + (v1 - v0) * (freq - f0) / (f1 - f0))
            }
        }
    }

    /// Frequencies of the strict local minima of the sampled curve.
    pub fn local_minima(&self) -> Vec<f64> {
        self.samples
            .windows(3)
            .filter(|w| w[1].1 < w[0].1 && w[1].1 < w[2].1)
            .map(|w| w[1].0)
            .collect()
    }
}

/// S11 at 2.4, 3.6 and 5.2 GHz by linear interpolation.
pub fn objectives_from_response(resp: &FrequencyResponse) -> Result<ObjectiveVector, EvalError> {
    let [a, b, c] = TARGET_FREQUENCIES_GHZ;
    Ok(ObjectiveVector {
        s11_24: resp.interpolate(a)?,
        s11_36: resp.interpolate(b)?,
        s11_52: resp.interpolate(c)?,
    })
}

/// Parses an ASCII S11 table: optional `#` header lines, then
/// `<frequency_GHz> <S11_dB>` rows separated by spaces or tabs.
pub fn parse_s11_table(text: &str) -> Result<FrequencyResponse, EvalError> {
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(EvalError::MalformedTable(format!(
                "line {}: expected 2 columns, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| {
                EvalError::MalformedTable(format!("line {}: '{s}' is not a number", lineno + 1))
            })
        };
        samples.push((parse(fields[0])?, parse(fields[1])?));
    }
    if samples.is_empty() {
        return Err(EvalError::MalformedTable("no data rows".into()));
    }
    FrequencyResponse::new(samples)
}
