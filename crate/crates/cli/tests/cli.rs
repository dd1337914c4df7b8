use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn moga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moga"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_into(dir: &Path, extra: &[&str]) -> Output {
    let out = dir.to_str().unwrap();
    let mut args = vec!["run", "--out", out];
    args.extend_from_slice(extra);
    moga(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn scalar_run_writes_ten_trace_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("d");
    let o = run_into(
        &d,
        &[
            "--algorithm",
            "scalar",
            "--seed",
            "42",
            "--generations",
            "10",
            "--population",
            "10",
            "--evaluator",
            "surrogate",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let trace = fs::read_to_string(d.join("trace.csv")).unwrap();
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(
        lines[0],
        "generation,best_fitness,gd,igd,diversity,convergence_speed"
    );
    assert_eq!(lines.len(), 11);
    for f in ["front.json", "best.json", "config.txt", "timing.json"] {
        assert!(d.join(f).is_file(), "{f} missing");
    }
}

#[test]
fn invalid_algorithm_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_into(tmp.path(), &["--algorithm", "moead", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("moead"));
    assert!(!tmp.path().join("trace.csv").exists());
}

#[test]
fn missing_seed_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_into(tmp.path(), &["--algorithm", "nsga2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn rerun_is_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let flags = ["--algorithm", "spea", "--seed", "9", "--jobs", "2"];
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(run_into(&a, &flags).status.success());
    assert!(run_into(&b, &flags).status.success());
    for f in ["trace.csv", "front.json", "best.json", "config.txt"] {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f} differs"
        );
    }
}

#[test]
fn flags_override_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("exp.cfg");
    fs::write(
        &file,
        "# short run\nalgorithm = nsga1\nseed = 4\ngenerations = 3\n",
    )
    .unwrap();
    let d = tmp.path().join("d");
    let o = run_into(
        &d,
        &["--config", file.to_str().unwrap(), "--generations", "5"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        fs::read_to_string(d.join("trace.csv"))
            .unwrap()
            .lines()
            .count(),
        6
    );
    let echoed = fs::read_to_string(d.join("config.txt")).unwrap();
    assert!(echoed.contains("algorithm=nsga1"), "{echoed}");
    assert!(echoed.contains("generations=5"), "{echoed}");
}

#[test]
fn unknown_config_key_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_into(
        tmp.path(),
        &[
            "--algorithm",
            "pga",
            "--seed",
            "1",
            "--set",
            "mutation-sigma=2",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn external_timeout_exits_nonzero_with_partial_record() {
    let tmp = tempfile::tempdir().unwrap();
    let exchange = tmp.path().join("exchange");
    fs::create_dir(&exchange).unwrap();
    let d = tmp.path().join("d");
    let evaluator = format!("external:{}", exchange.display());
    let o = run_into(
        &d,
        &[
            "--algorithm",
            "scalar",
            "--seed",
            "1",
            "--evaluator",
            &evaluator,
            "--external-timeout",
            "0.2",
        ],
    );
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("generation 1"));
    assert!(d.join("config.txt").is_file());
    assert!(!d.join("best.json").exists());
}

#[test]
fn compare_reports_one_row_per_run() {
    let tmp = tempfile::tempdir().unwrap();
    let mut dirs = Vec::new();
    for alg in ["pga", "nsga1", "nsga2", "nsga3", "spea", "scalar"] {
        let d = tmp.path().join(alg);
        assert!(run_into(&d, &["--algorithm", alg, "--seed", "3"])
            .status
            .success());
        dirs.push(d.to_str().unwrap().to_string());
    }
    let csv_path = tmp.path().join("report.csv");
    let mut args = vec!["compare", "--csv", csv_path.to_str().unwrap()];
    args.extend(dirs.iter().map(String::as_str));
    let o = moga(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 7);
    let header: Vec<&str> = lines[0].split(',').collect();
    for name in ["R1", "R2", "R3", "R4", "Vr", "Ur", "Wg", "Lg", "Wp", "Lp"] {
        assert!(header.contains(&name), "{name} missing from {header:?}");
    }
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), header.len());
    }
    assert!(stdout(&o).contains("size reduction"));
}

#[test]
fn compare_of_identical_runs_gives_identical_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for d in [&a, &b] {
        assert!(run_into(d, &["--algorithm", "nsga2", "--seed", "8"])
            .status
            .success());
    }
    let o = moga(&[
        "compare",
        "--format",
        "csv",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], rows[1]);
}

#[test]
fn compare_needs_two_runs_and_valid_directories() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    assert!(run_into(&a, &["--algorithm", "pga", "--seed", "1"])
        .status
        .success());
    assert!(!moga(&["compare", a.to_str().unwrap()]).status.success());
    let missing = tmp.path().join("missing");
    assert!(
        !moga(&["compare", a.to_str().unwrap(), missing.to_str().unwrap()])
            .status
            .success()
    );
}

#[test]
fn bench_prints_one_line_per_seed_and_is_reproducible() {
    let args = [
        "bench",
        "--problem",
        "zdt1",
        "--algorithm",
        "nsga2",
        "--population",
        "50",
        "--generations",
        "30",
        "--seeds",
        "10",
    ];
    let first = moga(&args);
    assert!(
        first.status.success(),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "seed,gd,igd,front_size");
    assert_eq!(lines.len(), 11);
    for l in &lines[1..] {
        let igd: f64 = l.split(',').nth(2).unwrap().parse().unwrap();
        assert!(igd.is_finite() && igd >= 0.0);
    }
    assert_eq!(text, stdout(&moga(&args)));
}

#[test]
fn bench_rejects_zero_generations() {
    let o = moga(&["bench", "--problem", "zdt1", "--generations", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!moga(&["bench", "--problem", "zdt7"]).status.success());
}
