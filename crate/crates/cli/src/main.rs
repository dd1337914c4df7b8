use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use moga_core::engines::Algorithm;
use moga_core::evaluator::BenchmarkId;
use moga_core::experiment::{
    bench, compare_runs, execute, parse_pairs, sig6, ConfigError, ExperimentConfig, ExperimentError,
};
use moga_core::RunError;

/// Multi-objective genetic algorithms for tri-band CSRR antenna design.
#[derive(Debug, Parser)]
#[command(name = "moga", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one optimization and write its record into a directory.
    Run(Box<RunArgs>),
    /// Tabulate the best designs of two or more completed runs.
    Compare(CompareArgs),
    /// Run an engine on a benchmark with a known front and report GD/IGD.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Flat key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for trace.csv, front.json, best.json, config.txt and timing.json.
    #[arg(long)]
    out: PathBuf,
    /// pga, nsga1, nsga2, nsga3, spea or scalar
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Option<Algorithm>,
    /// Population size N.
    #[arg(long)]
    population: Option<String>,
    /// Number of generations G; the trace has one row per generation.
    #[arg(long)]
    generations: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// surrogate, zdt1, dtlz2 or external:<dir>
    #[arg(long)]
    evaluator: Option<String>,
    /// Comma-separated scalarization weights, one per objective.
    #[arg(long)]
    weights: Option<String>,
    /// Sharing radius in normalized objective space (PGA, NSGA-I).
    #[arg(long)]
    sigma_share: Option<String>,
    /// Sharing function exponent.
    #[arg(long)]
    alpha: Option<String>,
    /// Das-Dennis divisions per objective (NSGA-III).
    #[arg(long)]
    ref_divisions: Option<String>,
    /// SPEA external archive capacity; defaults to the population size.
    #[arg(long)]
    archive_size: Option<String>,
    /// Evaluation threads.
    #[arg(long)]
    jobs: Option<String>,
    /// Named preset applied before every other setting.
    #[arg(long)]
    preset: Option<String>,
    /// NSGA-I mating selection: tournament or proportionate.
    #[arg(long)]
    selection: Option<String>,
    /// Seconds to wait for each external evaluation.
    #[arg(long)]
    external_timeout: Option<String>,
    /// Extra key=value settings, e.g. --set mutation-rate=0.2
    #[arg(long = "set", value_name = "KEY=VALUE")]
    extra: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Run directories written by `moga run`.
    #[arg(required = true, num_args = 2..)]
    runs: Vec<PathBuf>,
    /// Also write the CSV report to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_benchmark)]
    problem: BenchmarkId,
    #[arg(long, value_parser = parse_algorithm, default_value = "nsga2")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = 50)]
    population: usize,
    #[arg(long, default_value_t = 150)]
    generations: usize,
    /// Number of seeds; runs use seeds first-seed, first-seed + 1, ...
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    #[arg(long)]
    ref_divisions: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_benchmark(s: &str) -> Result<BenchmarkId, String> {
    s.parse::<BenchmarkId>().map_err(|e| e.to_string())
}

/// Exit statuses beyond clap's own usage error (2).
const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 3;
const EXIT_EVALUATION: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run_command(*args),
        Command::Compare(args) => compare_command(args),
        Command::Bench(args) => bench_command(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", describe(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}

/// The error and any causes its own message does not already include.
fn describe(err: &anyhow::Error) -> String {
    let mut text = String::new();
    for cause in err.chain() {
        let msg = cause.to_string();
        if !text.contains(&msg) {
            if !text.is_empty() {
                text.push_str(": ");
            }
            text.push_str(&msg);
        }
    }
    text
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return EXIT_CONFIG;
    }
    match err.downcast_ref::<ExperimentError>() {
        Some(ExperimentError::Config(_)) | Some(ExperimentError::Run(RunError::Config(_))) => {
            EXIT_CONFIG
        }
        Some(ExperimentError::Run(RunError::Genome(_))) => EXIT_CONFIG,
        Some(ExperimentError::Run(RunError::Evaluation { .. })) => EXIT_EVALUATION,
        _ => EXIT_FAILURE,
    }
}

impl RunArgs {
    /// Flag settings as key=value pairs, in the order they override each other.
    fn pairs(&self) -> anyhow::Result<Vec<(String, String)>> {
        let mut pairs = Vec::new();
        let mut push = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                pairs.push((key.to_string(), v));
            }
        };
        push("preset", self.preset.clone());
        push("algorithm", self.algorithm.map(|a| a.to_string()));
        push("population", self.population.clone());
        push("generations", self.generations.clone());
        push("seed", self.seed.clone());
        push("evaluator", self.evaluator.clone());
        push("weights", self.weights.clone());
        push("sigma-share", self.sigma_share.clone());
        push("alpha", self.alpha.clone());
        push("ref-divisions", self.ref_divisions.clone());
        push("archive-size", self.archive_size.clone());
        push("jobs", self.jobs.clone());
        push("selection", self.selection.clone());
        push("external-timeout", self.external_timeout.clone());
        for item in &self.extra {
            let (k, v) = item.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: 0,
                text: item.clone(),
            })?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(pairs)
    }
}

fn run_command(args: RunArgs) -> anyhow::Result<()> {
    let mut pairs = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_pairs(&text)?
        }
        None => Vec::new(),
    };
    pairs.extend(args.pairs()?);
    let cfg = ExperimentConfig::from_pairs(&pairs)?;
    let report = execute(&cfg, &args.out)?;
    let objectives: Vec<String> = report
        .outcome
        .best
        .objectives
        .iter()
        .map(|&v| sig6(v))
        .collect();
    println!(
        "{} seed {}: best fitness {} objectives [{}] after {} evaluations in {:.2} s; record in {}",
        cfg.algorithm,
        cfg.seed,
        sig6(report.outcome.best_fitness),
        objectives.join(", "),
        report.outcome.evaluations,
        report.elapsed.as_secs_f64(),
        args.out.display()
    );
    Ok(())
}

fn compare_command(args: CompareArgs) -> anyhow::Result<()> {
    let report = compare_runs(&args.runs)?;
    if let Some(path) = &args.csv {
        fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    match args.format {
        OutputFormat::Table => print!("{}", report.to_table()),
        OutputFormat::Csv => print!("{}", report.to_csv()),
    }
    Ok(())
}

fn bench_command(args: BenchArgs) -> anyhow::Result<()> {
    let mut pairs = vec![
        ("algorithm".to_string(), args.algorithm.to_string()),
        ("evaluator".to_string(), args.problem.to_string()),
        ("population".to_string(), args.population.to_string()),
        ("generations".to_string(), args.generations.to_string()),
        ("seed".to_string(), args.first_seed.to_string()),
        ("jobs".to_string(), args.jobs.to_string()),
    ];
    if let Some(p) = args.ref_divisions {
        pairs.push(("ref-divisions".to_string(), p.to_string()));
    }
    let cfg = ExperimentConfig::from_pairs(&pairs)?;
    let seeds: Vec<u64> = (0..args.seeds).map(|i| args.first_seed + i).collect();
    let results = bench(args.problem, &cfg.run_config(cfg.objectives()), &seeds)?;
    println!("seed,gd,igd,front_size");
    for r in &results {
        println!("{},{},{},{}", r.seed, sig6(r.gd), sig6(r.igd), r.front_size);
    }
    let total: f64 = results.iter().map(|r| r.seconds).sum();
    eprintln!(
        "{} runs of {} on {} in {:.2} s",
        results.len(),
        args.algorithm,
        args.problem,
        total
    );
    Ok(())
}
