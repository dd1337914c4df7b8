//! Experiment plumbing: configuration, persisted run records, comparison
//! reports and benchmark validation.

mod config;
mod format;
mod record;
mod report;

use thiserror::Error;

pub use config::{
    normalize_key, parse_pairs, ConfigError, EvaluatorChoice, ExperimentConfig, SMALL_PRESET,
};
pub use format::sig6;
pub use record::{
    execute, pooled_trace_front, render, trace_csv, write_artifacts, BestFile, FrontFile,
    FrontMember, RunArtifacts, RunReport, TRACE_HEADER,
};
pub use report::{
    bench, benchmark_objectives, compare_runs, pooled_front, BenchResult, CompareReport, CompareRow,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Run(#[from] crate::engines::RunError),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricsError),
    #[error("{0}")]
    Record(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
