//! Command-line front end: incremental test-set selection, predictivity
//! assessment, dataset splitting, and the benchmark protocols.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tessel::bench::{
    self, method_name, run_section4, run_split_study, split_indices, BenchError, CaseId, TestCase,
};
use tessel::io::{self, IoError};
use tessel_core::kernels::{condition, KernelSpec};
use tessel_core::measures::{iso_transform, sobol_sequence, PointSet, TargetMeasure};
use tessel_core::selection::{selection_state, SelectionError, SelectionMethod};
use tessel_core::surrogate::{fit, FitConfig};
use tessel_core::weighting::{
    optimal_weights, optimal_weights_prime, q2_report, ErrorInterpolant, WeightedTestSet,
    WeightingError,
};

// ---------------------------------------------------------------------------
// Error handling and exit codes
// ---------------------------------------------------------------------------

/// Failure categories, each with its own exit code so scripts can
/// distinguish bad input (2) from numerical trouble (3) and I/O faults (4).
#[derive(Debug)]
enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::ColumnCount { .. }
            | IoError::NotANumber { .. }
            | IoError::Empty { .. }
            | IoError::NoRows { .. }
            | IoError::Invalid { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Io(e.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<SelectionError> for CliError {
    fn from(e: SelectionError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<WeightingError> for CliError {
    fn from(e: WeightingError) -> Self {
        match e {
            WeightingError::Conditioning(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<tessel_core::surrogate::SurrogateError> for CliError {
    fn from(e: tessel_core::surrogate::SurrogateError) -> Self {
        use tessel_core::surrogate::SurrogateError as E;
        match e {
            E::Conditioning(_) | E::DegenerateDenominator => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<tessel_core::measures::MeasureError> for CliError {
    fn from(e: tessel_core::measures::MeasureError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<tessel_core::kernels::KernelError> for CliError {
    fn from(e: tessel_core::kernels::KernelError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Command-line grammar
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "tessel",
    version,
    about = "Test-set selection and weighted predictivity assessment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Incrementally select a test set against a target measure.
    Select(SelectArgs),
    /// Compute predictivity coefficients of a surrogate on a test set.
    Assess(AssessArgs),
    /// Partition a dataset into training and test sets.
    Split(SplitArgs),
    /// Run the benchmark protocols and export CSV/JSON results.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SelectArgs {
    /// Selection method: herding | support-points | fssf.
    #[arg(long)]
    method: String,
    /// Number of points to select.
    #[arg(long)]
    n: usize,
    /// Candidate points CSV (alternative to --measure).
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Target measure, e.g. `uniform:d=2` or `normal:d=2`.
    #[arg(long)]
    measure: Option<String>,
    /// Number of generated candidate points (with --measure).
    #[arg(long, default_value_t = 4096)]
    n_candidates: usize,
    /// Already-evaluated design points CSV, treated as part of the test set
    /// for scoring but never re-selected.
    #[arg(long)]
    fixed: Option<PathBuf>,
    /// Isotropic kernel lengthscale; defaults to n^(-1/d).
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV of the ordered selection.
    #[arg(long)]
    out: PathBuf,
    /// Provenance JSON (method, seed, kernel, per-step scores).
    #[arg(long)]
    provenance: Option<PathBuf>,
}

#[derive(Args)]
struct AssessArgs {
    /// Training data as `X.csv,y.csv`.
    #[arg(long, value_parser = parse_pair)]
    train: (PathBuf, PathBuf),
    /// Test data as `X.csv,y.csv`.
    #[arg(long, value_parser = parse_pair)]
    test: (PathBuf, PathBuf),
    /// External predictions at the test points (alternative to
    /// --fit-kriging).
    #[arg(long)]
    pred: Option<PathBuf>,
    /// Fit an ordinary-kriging surrogate on the training data.
    #[arg(long, default_value_t = false)]
    fit_kriging: bool,
    /// Skip the optimal-weight solve and report uniform weights only.
    #[arg(long, default_value_t = false)]
    uniform_weights: bool,
    /// Target measure for the weight solve, e.g. `uniform:d=2`; defaults to
    /// the empirical measure of the train+test rows.
    #[arg(long)]
    measure: Option<String>,
    /// Explicit measure sample CSV overriding --measure.
    #[arg(long)]
    mu_sample: Option<PathBuf>,
    /// Size of the generated measure sample (with --measure).
    #[arg(long, default_value_t = 4096)]
    mu_sample_size: usize,
    /// Isotropic weighting-kernel lengthscale; defaults to
    /// range * n^(-1/d) per coordinate.
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output report JSON.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SplitArgs {
    /// Input dataset CSV (inputs only; responses are never used).
    #[arg(long)]
    data: PathBuf,
    /// Selection method: herding | support-points | fssf.
    #[arg(long, default_value = "herding")]
    method: String,
    /// Test fraction in (0,1) (alternative to --n-test).
    #[arg(long)]
    ratio: Option<f64>,
    /// Absolute test-set size (alternative to --ratio).
    #[arg(long)]
    n_test: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    train_out: PathBuf,
    #[arg(long)]
    test_out: PathBuf,
    /// Provenance JSON with the selected indices.
    #[arg(long)]
    provenance: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Analytic case: f1 | f2 | gsobol (incremental-assessment protocol).
    #[arg(long)]
    case: Option<String>,
    /// Restrict the training-size grid to these values.
    #[arg(long, num_args = 1..)]
    m: Vec<usize>,
    /// Tabular dataset as `X.csv,y.csv` (split-ratio protocol).
    #[arg(long, value_parser = parse_pair)]
    data: Option<(PathBuf, PathBuf)>,
    /// Run the split-ratio protocol on the built-in synthetic dataset.
    #[arg(long, default_value_t = false)]
    synthetic: bool,
    /// Size of the built-in synthetic dataset.
    #[arg(long, default_value_t = 300)]
    synthetic_n: usize,
    /// Monte-Carlo sample size for the ground-truth baseline.
    #[arg(long, default_value_t = 100_000)]
    mc_size: usize,
    /// Measure-sample size for the optimal-weight solves.
    #[arg(long, default_value_t = 4096)]
    mu_sample_size: usize,
    /// Random cross-validation repetitions per ratio.
    #[arg(long, default_value_t = 200)]
    rcv_reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output prefix; writes `<out>.csv` and `<out>.json`.
    #[arg(long, default_value = "bench")]
    out: PathBuf,
}

fn parse_pair(s: &str) -> Result<(PathBuf, PathBuf), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => {
            Ok((PathBuf::from(a), PathBuf::from(b)))
        }
        _ => Err("expected two comma-separated paths: X.csv,y.csv".into()),
    }
}

fn parse_method(s: &str) -> Result<SelectionMethod, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "herding" | "kernel-herding" => Ok(SelectionMethod::KernelHerding),
        "support-points" | "sp" => Ok(SelectionMethod::SupportPoints),
        "fssf" | "fssf-fr" => Ok(SelectionMethod::FssfFr),
        other => Err(CliError::Validation(format!(
            "unknown method {other:?}; expected herding, support-points, or fssf"
        ))),
    }
}

/// Measure grammar: `uniform:d=D` (unit cube) or `normal:d=D` (standard
/// normal product).
fn parse_measure(s: &str) -> Result<TargetMeasure, CliError> {
    let err = || {
        CliError::Validation(format!(
            "cannot parse measure {s:?}; expected uniform:d=D or normal:d=D"
        ))
    };
    let (kind, rest) = s.split_once(':').ok_or_else(err)?;
    let d: usize = rest.strip_prefix("d=").ok_or_else(err)?.parse().map_err(|_| err())?;
    if d == 0 {
        return Err(err());
    }
    match kind.to_ascii_lowercase().as_str() {
        "uniform" => Ok(TargetMeasure::UnitCubeUniform(d)),
        "normal" => Ok(TargetMeasure::standard_normal(d)),
        _ => Err(err()),
    }
}

/// Thread cap from TESSEL_THREADS. The library runs single-threaded, so any
/// positive cap is honored; the resolved value is recorded in provenance.
fn thread_cap() -> Result<usize, CliError> {
    match std::env::var("TESSEL_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(CliError::Validation(format!(
                "TESSEL_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn provenance_base(command: &str, seed: u64, threads: usize) -> serde_json::Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "threads": threads,
    })
}

fn merge(base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    let (mut a, b) = match (base, extra) {
        (serde_json::Value::Object(a), serde_json::Value::Object(b)) => (a, b),
        _ => unreachable!("provenance values are objects"),
    };
    a.extend(b);
    serde_json::Value::Object(a)
}

fn to_pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}

/// Per-coordinate default lengthscales `range * n^(-1/d)` with unit floor
/// for degenerate coordinates, or an isotropic override.
fn weighting_kernel(all: &PointSet, n: usize, theta: Option<f64>) -> KernelSpec {
    match theta {
        Some(t) => KernelSpec::matern52_tensor(vec![t; all.dim()]),
        None => bench::split_kernel(all, n),
    }
}

// ---------------------------------------------------------------------------
// select
// ---------------------------------------------------------------------------

fn cmd_select(args: &SelectArgs, threads: usize) -> Result<(), CliError> {
    let method = parse_method(&args.method)?;
    if args.n == 0 {
        return Err(CliError::Validation("--n must be at least 1".into()));
    }

    // candidates come from a file or are generated from the measure
    let (cube, candidates, mu) = match (&args.candidates, &args.measure) {
        (Some(path), _) => {
            let pts = io::read_matrix_csv(path)?;
            let mu = match &args.measure {
                Some(m) => parse_measure(m)?,
                None => TargetMeasure::Empirical { points: pts.clone(), weights: None },
            };
            (None, pts, mu)
        }
        (None, Some(m)) => {
            let mu = parse_measure(m)?;
            let cube = sobol_sequence(mu.dim(), args.n_candidates, 1)?;
            let physical = iso_transform(&cube, &mu)?;
            (Some(cube), physical, mu)
        }
        (None, None) => {
            return Err(CliError::Validation(
                "provide candidate points via --candidates or a measure via --measure".into(),
            ))
        }
    };
    let d = candidates.dim();

    let fixed = match &args.fixed {
        Some(path) => io::read_matrix_csv(path)?,
        None => PointSet::empty(d),
    };
    if fixed.dim() != d {
        return Err(CliError::Validation(format!(
            "--fixed has {} columns but candidates have {d}",
            fixed.dim()
        )));
    }

    let theta = args.theta.unwrap_or((args.n.max(2) as f64).powf(-1.0 / d as f64));
    let kernel = KernelSpec::matern52_tensor(vec![theta; d]);

    // FSSF scores in the unit cube; other methods in the physical space.
    let scoring_candidates = match (&cube, method) {
        (Some(c), SelectionMethod::FssfFr) => c.clone(),
        _ => candidates.clone(),
    };
    let scoring_fixed = if method == SelectionMethod::FssfFr && cube.is_some() {
        // generated candidates: fixed points must be given in the cube too
        fixed.clone()
    } else {
        fixed.clone()
    };

    let mut state = selection_state(method, scoring_candidates, scoring_fixed, &mu, &kernel, args.seed)?;
    let mut steps = Vec::with_capacity(args.n);
    for _ in 0..args.n {
        // criterion values before the step, so the recorded score is the one
        // the point was chosen at
        let pre: Vec<f64> = (0..state.candidates().len()).map(|c| state.score(c)).collect();
        let idx = state.next()?;
        let score = pre[idx];
        steps.push(json!({
            "index": idx,
            "score": if score.is_finite() { Some(score) } else { None },
        }));
    }
    let indices = state.selected_indices().to_vec();
    let selected = candidates.select(&indices);

    write_text(&args.out, &io::matrix_to_csv(&selected))?;
    if let Some(path) = &args.provenance {
        let prov = merge(
            provenance_base("select", args.seed, threads),
            json!({
                "method": method_name(method),
                "n": args.n,
                "n_candidates": candidates.len(),
                "fixed": fixed.len(),
                "kernel": {"family": "matern52", "form": "tensor", "theta": theta},
                "measure": args.measure,
                "steps": steps,
                "out": args.out.display().to_string(),
            }),
        );
        write_text(path, &to_pretty(&prov))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// assess
// ---------------------------------------------------------------------------

fn cmd_assess(args: &AssessArgs, threads: usize) -> Result<(), CliError> {
    let x_m = io::read_matrix_csv(&args.train.0)?;
    let y_m = io::read_column_csv(&args.train.1)?;
    let x_n = io::read_matrix_csv(&args.test.0)?;
    let y_n = io::read_column_csv(&args.test.1)?;
    if y_m.len() != x_m.len() {
        return Err(CliError::Validation(format!(
            "{} training responses for {} training points",
            y_m.len(),
            x_m.len()
        )));
    }
    if y_n.len() != x_n.len() {
        return Err(CliError::Validation(format!(
            "{} test responses for {} test points",
            y_n.len(),
            x_n.len()
        )));
    }
    if x_n.dim() != x_m.dim() {
        return Err(CliError::Validation(format!(
            "test points have {} columns but training points have {}",
            x_n.dim(),
            x_m.dim()
        )));
    }

    let model = if args.fit_kriging {
        Some(fit(&x_m, &y_m, &FitConfig::default())?)
    } else {
        None
    };
    let eta_n = match (&args.pred, &model) {
        (Some(path), _) => {
            let eta = io::read_column_csv(path)?;
            if eta.len() != x_n.len() {
                return Err(CliError::Validation(format!(
                    "{} predictions for {} test points",
                    eta.len(),
                    x_n.len()
                )));
            }
            eta
        }
        (None, Some(m)) => m.predict(&x_n)?,
        (None, None) => {
            return Err(CliError::Validation(
                "provide predictions via --pred or request a surrogate via --fit-kriging".into(),
            ))
        }
    };

    let all = x_m.concat(&x_n).map_err(|e| CliError::Validation(e.to_string()))?;
    let kernel = weighting_kernel(&all, x_n.len(), args.theta);

    let mu_sample = match (&args.mu_sample, &args.measure) {
        (Some(path), _) => {
            let s = io::read_matrix_csv(path)?;
            if s.dim() != x_m.dim() {
                return Err(CliError::Validation(format!(
                    "--mu-sample has {} columns but the data has {}",
                    s.dim(),
                    x_m.dim()
                )));
            }
            s
        }
        (None, Some(m)) => {
            let mu = parse_measure(m)?;
            if mu.dim() != x_m.dim() {
                return Err(CliError::Validation(format!(
                    "--measure has dimension {} but the data has {}",
                    mu.dim(),
                    x_m.dim()
                )));
            }
            iso_transform(&sobol_sequence(mu.dim(), args.mu_sample_size, 1)?, &mu)?
        }
        (None, None) => all.clone(),
    };

    let (wts, prime) = if args.uniform_weights {
        (WeightedTestSet::uniform(x_n.clone()), None)
    } else {
        let ck = condition(&kernel, &x_m).map_err(|e| CliError::Numerical(e.to_string()))?;
        let eta_m = match &model {
            Some(m) => m.predict(&x_m)?,
            // external predictor: residual interpolant from test residuals is
            // unavailable, so treat the predictor as interpolating at X_m
            None => y_m.clone(),
        };
        let delta = ErrorInterpolant::new(&ck, &y_m, &eta_m)?;
        let wts = optimal_weights(&ck, &x_n, &mu_sample, Some(&delta))?;
        let prime = match &model {
            Some(m) => {
                let y_bar = y_m.iter().sum::<f64>() / y_m.len() as f64;
                let predictor = |x: &[f64]| m.predict_one(x).unwrap_or(y_bar);
                Some(optimal_weights_prime(&ck, &x_n, &mu_sample, &predictor, y_bar)?)
            }
            None => None,
        };
        (wts, prime)
    };

    let report = q2_report(&y_n, &eta_n, wts, Some(&y_m), prime.as_ref())?;

    let out = merge(
        provenance_base("assess", args.seed, threads),
        json!({
            "m": x_m.len(),
            "n": x_n.len(),
            "dim": x_m.dim(),
            "kernel": {
                "family": "matern52",
                "form": "tensor",
                "theta": kernel.lengthscales,
            },
            "uniform_weights": args.uniform_weights,
            "fit_kriging": args.fit_kriging,
            "q2_hat": report.q2_hat,
            "q2_star": report.q2_star,
            "q2_prime": report.q2_prime,
            "q2_prime_star": report.q2_prime_star,
            "ise_uniform": report.ise_uniform,
            "ise_weighted": report.ise_weighted,
            "denom_uniform": report.denom_uniform,
            "weights": report.weights.weights,
            "weight_scheme": format!("{:?}", report.weights.scheme),
            "solver_residual": report.solver_residual,
            "jitter": report.jitter,
        }),
    );
    write_text(&args.out, &to_pretty(&out))
}

// ---------------------------------------------------------------------------
// split
// ---------------------------------------------------------------------------

fn cmd_split(args: &SplitArgs, threads: usize) -> Result<(), CliError> {
    let data = io::read_matrix_csv(&args.data)?;
    let n_total = data.len();
    let method = parse_method(&args.method)?;
    let n_test = match (args.ratio, args.n_test) {
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "give either --ratio or --n-test, not both".into(),
            ))
        }
        (Some(r), None) => {
            if !(r > 0.0 && r < 1.0) {
                return Err(CliError::Validation(format!("--ratio {r} outside (0,1)")));
            }
            ((r * n_total as f64).round() as usize).clamp(1, n_total - 1)
        }
        (None, Some(n)) => {
            if n == 0 || n >= n_total {
                return Err(CliError::Validation(format!(
                    "--n-test {n} must lie strictly between 0 and the dataset size {n_total}"
                )));
            }
            n
        }
        (None, None) => {
            return Err(CliError::Validation("give --ratio or --n-test".into()))
        }
    };

    let (train, test) = split_indices(method, n_test, &data, args.seed)?;
    write_text(&args.train_out, &io::matrix_to_csv(&data.select(&train)))?;
    write_text(&args.test_out, &io::matrix_to_csv(&data.select(&test)))?;
    if let Some(path) = &args.provenance {
        let prov = merge(
            provenance_base("split", args.seed, threads),
            json!({
                "method": method_name(method),
                "n_total": n_total,
                "n_test": n_test,
                "train_indices": train,
                "test_indices": test,
                "train_out": args.train_out.display().to_string(),
                "test_out": args.test_out.display().to_string(),
            }),
        );
        write_text(path, &to_pretty(&prov))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

fn cmd_bench(args: &BenchArgs, threads: usize) -> Result<(), CliError> {
    let mut config = json!({});
    let result = match (&args.case, &args.data, args.synthetic) {
        (Some(case), None, false) => {
            let id = CaseId::parse(case).ok_or_else(|| {
                CliError::Validation(format!(
                    "unknown case {case:?}; expected f1, f2, or gsobol"
                ))
            })?;
            let mut preset = TestCase::preset(id);
            if !args.m.is_empty() {
                for &m in &args.m {
                    if !preset.m_grid.contains(&m) {
                        return Err(CliError::Validation(format!(
                            "training size {m} is not in the {} grid {:?}",
                            id.name(),
                            preset.m_grid
                        )));
                    }
                }
                preset.m_grid = args.m.clone();
            }
            config = json!({
                "case": id.name(),
                "m_grid": preset.m_grid,
                "n_range": [preset.n_min, preset.n_max],
                "theta": preset.theta,
                "mc_size": args.mc_size,
                "mu_sample_size": args.mu_sample_size,
            });
            let methods = [
                SelectionMethod::KernelHerding,
                SelectionMethod::SupportPoints,
                SelectionMethod::FssfFr,
            ];
            run_section4(&preset, &methods, args.seed, args.mc_size, args.mu_sample_size)?
        }
        (None, data, synthetic) if data.is_some() || synthetic => {
            let (points, y) = match data {
                Some((xp, yp)) => {
                    let points = io::read_matrix_csv(xp)?;
                    let y = io::read_column_csv(yp)?;
                    if y.len() != points.len() {
                        return Err(CliError::Validation(format!(
                            "{} responses for {} points",
                            y.len(),
                            points.len()
                        )));
                    }
                    (points, y)
                }
                None => bench::synthetic_dataset(args.synthetic_n, args.seed),
            };
            let ratios: Vec<f64> = (0..17).map(|k| 0.1 + 0.05 * k as f64).collect();
            config = json!({
                "protocol": "split-study",
                "n_total": points.len(),
                "ratios": ratios,
                "rcv_reps": args.rcv_reps,
                "synthetic": args.data.is_none(),
            });
            run_split_study(&points, &y, &ratios, args.rcv_reps, args.seed)?
        }
        _ => {
            return Err(CliError::Validation(
                "give exactly one of --case, --data, or --synthetic".into(),
            ))
        }
    };

    let csv_path = args.out.with_extension("csv");
    let json_path = args.out.with_extension("json");
    write_text(&csv_path, &result.to_csv())?;
    let summary = merge(
        provenance_base("bench", args.seed, threads),
        merge(
            config,
            json!({
                "rows": result.rows.len(),
                "csv": csv_path.display().to_string(),
            }),
        ),
    );
    write_text(&json_path, &to_pretty(&summary))
}

// ---------------------------------------------------------------------------

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let threads = thread_cap()?;
    match &cli.command {
        Command::Select(a) => cmd_select(a, threads),
        Command::Assess(a) => cmd_assess(a, threads),
        Command::Split(a) => cmd_split(a, threads),
        Command::Bench(a) => cmd_bench(a, threads),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
