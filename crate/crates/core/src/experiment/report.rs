//! Cross-run comparison and benchmark validation.

use std::fs;
use std::path::{Path, PathBuf};

use super::format::sig6;
use super::record::{BestFile, FrontFile};
use super::ExperimentError;
use crate::engines::{nondominated_unique, run, Individual, RunConfig};
use crate::evaluator::BenchmarkId;
use crate::metrics::{gd, igd, SIZE_REDUCTION_DEFINITION};

/// One row of a comparison: a run's best design and its front quality.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub label: String,
    pub algorithm: String,
    pub seed: u64,
    pub genes: Vec<f64>,
    pub objectives: Vec<f64>,
    pub fitness: f64,
    pub size_reduction: Option<f64>,
    pub gd: f64,
    pub igd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub gene_names: Vec<String>,
    pub objective_names: Vec<String>,
    /// Non-dominated union of every run's front, sorted lexicographically.
    pub pooled_front: Vec<Vec<f64>>,
    pub rows: Vec<CompareRow>,
}

struct LoadedRun {
    label: String,
    front: FrontFile,
    best: BestFile,
}

fn load_run(dir: &Path) -> Result<LoadedRun, ExperimentError> {
    let read = |name: &str| {
        let path = dir.join(name);
        fs::read_to_string(&path)
            .map_err(|e| ExperimentError::Record(format!("cannot read {}: {e}", path.display())))
    };
    let corrupt = |name: &str, e: serde_json::Error| {
        ExperimentError::Record(format!("corrupt {}: {e}", dir.join(name).display()))
    };
    let front: FrontFile =
        serde_json::from_str(&read("front.json")?).map_err(|e| corrupt("front.json", e))?;
    let best: BestFile =
        serde_json::from_str(&read("best.json")?).map_err(|e| corrupt("best.json", e))?;
    if front.members.is_empty() {
        return Err(ExperimentError::Record(format!(
            "{}: empty front",
            dir.display()
        )));
    }
    let label = dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| dir.display().to_string());
    Ok(LoadedRun { label, front, best })
}

/// Non-dominated union of `fronts`, deduplicated and sorted so that the
/// result does not depend on the order of the inputs.
pub fn pooled_front(fronts: &[Vec<Vec<f64>>]) -> Vec<Vec<f64>> {
    let mut all: Vec<Individual> = fronts
        .iter()
        .flatten()
        .map(|o| Individual {
            genes: Vec::new(),
            objectives: o.clone(),
        })
        .collect();
    all.sort_by(|a, b| lex_cmp(&a.objectives, &b.objectives));
    nondominated_unique(&all)
        .into_iter()
        .map(|i| i.objectives)
        .collect()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Loads completed run directories and measures each run's front against the
/// pooled front of all of them.
pub fn compare_runs(dirs: &[PathBuf]) -> Result<CompareReport, ExperimentError> {
    if dirs.len() < 2 {
        return Err(ExperimentError::Record(
            "compare needs at least two run directories".into(),
        ));
    }
    let runs = dirs
        .iter()
        .map(|d| load_run(d))
        .collect::<Result<Vec<_>, _>>()?;
    let first = &runs[0].front;
    for r in &runs[1..] {
        if r.front.objective_names != first.objective_names
            || r.front.gene_names != first.gene_names
        {
            return Err(ExperimentError::Record(format!(
                "{} was produced by a different problem than {}",
                r.label, runs[0].label
            )));
        }
    }
    let fronts: Vec<Vec<Vec<f64>>> = runs
        .iter()
        .map(|r| {
            r.front
                .members
                .iter()
                .map(|m| m.objectives.clone())
                .collect()
        })
        .collect();
    let pooled = pooled_front(&fronts);
    let rows = runs
        .iter()
        .zip(&fronts)
        .map(|(r, f)| CompareRow {
            label: r.label.clone(),
            algorithm: r.best.algorithm.clone(),
            seed: r.best.seed,
            genes: r.best.genes.clone(),
            objectives: r.best.objectives.clone(),
            fitness: r.best.fitness,
            size_reduction: r.best.size_reduction_percent,
            gd: gd(f, &pooled).expect("non-empty sets"),
            igd: igd(f, &pooled).expect("non-empty sets"),
        })
        .collect();
    Ok(CompareReport {
        gene_names: first.gene_names.clone(),
        objective_names: first.objective_names.clone(),
        pooled_front: pooled,
        rows,
    })
}

impl CompareReport {
    fn header(&self) -> Vec<String> {
        let mut h = vec!["run".to_string(), "algorithm".into(), "seed".into()];
        h.extend(self.gene_names.iter().cloned());
        h.extend(self.objective_names.iter().cloned());
        h.extend(["fitness", "size_reduction_pct", "gd", "igd"].map(String::from));
        h
    }

    fn cells(&self, row: &CompareRow) -> Vec<String> {
        let mut c = vec![
            row.label.clone(),
            row.algorithm.clone(),
            row.seed.to_string(),
        ];
        c.extend(row.genes.iter().map(|&g| sig6(g)));
        c.extend(row.objectives.iter().map(|&o| sig6(o)));
        c.push(sig6(row.fitness));
        c.push(row.size_reduction.map(sig6).unwrap_or_default());
        c.push(sig6(row.gd));
        c.push(sig6(row.igd));
        c
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&self.cells(row).join(","));
            out.push('\n');
        }
        out
    }

    /// Aligned plain-text table followed by the size-reduction definition.
    pub fn to_table(&self) -> String {
        let header = self.header();
        let body: Vec<Vec<String>> = self.rows.iter().map(|r| self.cells(r)).collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|j| {
                body.iter()
                    .map(|r| r[j].len())
                    .chain([header[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&header);
        for r in &body {
            out.push_str(&line(r));
        }
        out.push_str(&format!(
            "\npooled reference front: {} points\n",
            self.pooled_front.len()
        ));
        if self.rows.iter().any(|r| r.size_reduction.is_some()) {
            out.push_str(SIZE_REDUCTION_DEFINITION);
            out.push('\n');
        }
        out
    }
}

/// Final-front quality of one benchmark run.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub seed: u64,
    pub gd: f64,
    pub igd: f64,
    pub front_size: usize,
    pub seconds: f64,
}

/// Runs `base` once per seed on `problem` and measures the final front
/// against the problem's analytic front.
pub fn bench(
    problem: BenchmarkId,
    base: &RunConfig,
    seeds: &[u64],
) -> Result<Vec<BenchResult>, ExperimentError> {
    let p = problem.problem();
    let reference = p
        .reference_front()
        .ok_or_else(|| ExperimentError::Record(format!("{problem} has no analytic front")))?;
    seeds
        .iter()
        .map(|&seed| {
            let cfg = RunConfig {
                seed,
                ..base.clone()
            };
            let start = std::time::Instant::now();
            let out = run(p.as_ref(), &cfg)?;
            let front: Vec<&[f64]> = out.front.iter().map(|i| i.objectives.as_slice()).collect();
            Ok(BenchResult {
                seed,
                gd: gd(&front, &reference)?,
                igd: igd(&front, &reference)?,
                front_size: front.len(),
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

/// Number of objectives of a benchmark problem.
pub fn benchmark_objectives(problem: BenchmarkId) -> usize {
    problem.problem().num_objectives()
}
