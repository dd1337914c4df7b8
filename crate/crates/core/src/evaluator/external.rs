//! File-exchange evaluator for an external electromagnetic solver.
//!
//! For every design the evaluator writes `<id>.params` (one `name=value` line
//! per gene, millimetres, six decimals) into the exchange directory and waits
//! for the solver to drop `<id>.s11.txt` next to it.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use super::response::{objectives_from_response, parse_s11_table};
use super::{EvalError, ObjectiveVector};
use crate::genome::{AntennaGenome, GENE_NAMES};

#[derive(Debug)]
pub struct ExternalEvaluator {
    dir: PathBuf,
    timeout: Duration,
    poll_interval: Duration,
    next_id: AtomicU64,
}

impl ExternalEvaluator {
    pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(600);

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ExternalEvaluator {
            dir: dir.into(),
            timeout: Self::DEFAULT_TIMEOUT,
            poll_interval: Duration::from_millis(50),
            next_id: AtomicU64::new(1),
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn with_poll_interval(mut self, interval: Duration) -> Self {
        self.poll_interval = interval;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Requests one evaluation under a fresh id.
    pub fn evaluate(&self, genome: &AntennaGenome) -> Result<ObjectiveVector, EvalError> {
        let id = format!("eval-{:06}", self.next_id.fetch_add(1, Ordering::Relaxed));
        self.evaluate_as(&id, genome)
    }

    /// Requests one evaluation under the caller-chosen `id`.
    pub fn evaluate_as(
        &self,
        id: &str,
        genome: &AntennaGenome,
    ) -> Result<ObjectiveVector, EvalError> {
        write_params(&self.dir, id, genome)?;
        let result = self.dir.join(format!("{id}.s11.txt"));
        let text = self.wait_for(&result)?;
        objectives_from_response(&parse_s11_table(&text)?)
    }

    fn wait_for(&self, path: &Path) -> Result<String, EvalError> {
        let start = Instant::now();
        loop {
            match fs::read_to_string(path) {
                Ok(text) => return Ok(text),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(e) => return Err(e.into()),
            }
            if start.elapsed() >= self.timeout {
                return Err(EvalError::Timeout {
                    path: path.display().to_string(),
                    seconds: self.timeout.as_secs_f64(),
                });
            }
            std::thread::sleep(self.poll_interval);
        }
    }
}

/// Writes `<dir>/<id>.params` atomically (temporary file, then rename).
pub fn write_params(dir: &Path, id: &str, genome: &AntennaGenome) -> Result<PathBuf, EvalError> {
    let mut body = String::new();
    for (name, value) in GENE_NAMES.iter().zip(genome.to_array()) {
        body.push_str(&format!("{name}={value:.6}\n"));
    }
    let target = dir.join(format!("{id}.params"));
    let tmp = dir.join(format!(".{id}.params.tmp"));
    fs::write(&tmp, body)?;
    fs::rename(&tmp, &target)?;
    Ok(target)
}

/// Reads a parameter file back into a genome.
pub fn read_params(path: &Path) -> Result<AntennaGenome, EvalError> {
    let text = fs::read_to_string(path)?;
    let mut values = [f64::NAN; GENE_NAMES.len()];
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| EvalError::MalformedTable(format!("bad parameter line '{line}'")))?;
        let slot = GENE_NAMES
            .iter()
            .position(|n| *n == name.trim())
            .ok_or_else(|| EvalError::MalformedTable(format!("unknown parameter '{name}'")))?;
        values[slot] = value
            .trim()
            .parse()
            .map_err(|_| EvalError::MalformedTable(format!("bad value in '{line}'")))?;
    }
    if let Some(i) = values.iter().position(|v| v.is_nan()) {
        return Err(EvalError::MalformedTable(format!(
            "missing parameter {}",
            GENE_NAMES[i]
        )));
    }
    Ok(AntennaGenome::from_array(values))
}
