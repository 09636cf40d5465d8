//! Benchmark test functions and experiment protocols: incremental test-set
//! assessment on analytic cases (f1, f2, gSobol) and the split-ratio study
//! with random cross-validation on tabular datasets.

use serde::Serialize;
use tessel_core::kernels::{condition, KernelSpec};
use tessel_core::measures::{
    iso_transform, maximin_lhs, sobol_sequence, Marginal, MeasureError, PointSet, TargetMeasure,
};
use tessel_core::rng::Rng;
use tessel_core::selection::{selection_state, SelectionError, SelectionMethod};
use tessel_core::surrogate::{fit, loo_q2, FitConfig, KrigingModel, SurrogateError};
use tessel_core::weighting::{optimal_weights, q2_report, ErrorInterpolant, WeightingError};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("measure error: {0}")]
    Measure(String),
    #[error("selection error: {0}")]
    Selection(String),
    #[error("surrogate error: {0}")]
    Surrogate(String),
    #[error("weighting error: {0}")]
    Weighting(String),
    #[error("kernel error: {0}")]
    Kernel(String),
    #[error("discrepancy error: {0}")]
    Discrepancy(String),
    #[error("{0}")]
    Invalid(String),
}

impl BenchError {
    /// The core error types are display-only (`no_std`); numerical failures
    /// are the ones scripts need to distinguish from bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            BenchError::Surrogate(_) | BenchError::Weighting(_) | BenchError::Kernel(_)
        )
    }
}

macro_rules! from_core_error {
    ($src:ty, $variant:ident) => {
        impl From<$src> for BenchError {
            fn from(e: $src) -> Self {
                BenchError::$variant(e.to_string())
            }
        }
    };
}

from_core_error!(MeasureError, Measure);
from_core_error!(SelectionError, Selection);
from_core_error!(SurrogateError, Surrogate);
from_core_error!(WeightingError, Weighting);
from_core_error!(tessel_core::kernels::KernelError, Kernel);
from_core_error!(tessel_core::discrepancy::DiscrepancyError, Discrepancy);

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

fn h(u1: f64, u2: f64) -> f64 {
    u1.exp() / 5.0 - u2 / 5.0 + u2.powi(6) / 3.0 + 4.0 * u2.powi(4) - 4.0 * u2 * u2
        + 0.7 * u1 * u1
        + u1.powi(4)
        + 3.0 / (4.0 * u1 * u1 + 4.0 * u2 * u2 + 1.0)
}

/// Smooth two-dimensional test function on the unit square.
pub fn f1(x: &[f64]) -> f64 {
    h(2.0 * x[0] - 1.0, 2.0 * x[1] - 1.0)
}

/// Oscillatory two-dimensional test function on all of the plane.
pub fn f2(x: &[f64]) -> f64 {
    let a = 5.0 + 1.5 * x[0];
    a.cos() + a.sin() + 0.01 * a * (5.0 + 1.5 * x[1])
}

/// Eight-dimensional gSobol product function with coefficients `a_i = i^2`.
pub fn gsobol(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let a = ((i + 1) * (i + 1)) as f64;
            ((4.0 * v - 2.0).abs() + a) / (1.0 + a)
        })
        .product()
}

// ---------------------------------------------------------------------------
// Benchmark cases
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    F1,
    F2,
    Gsobol,
}

impl CaseId {
    pub fn parse(s: &str) -> Option<CaseId> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Some(CaseId::F1),
            "f2" => Some(CaseId::F2),
            "gsobol" => Some(CaseId::Gsobol),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseId::F1 => "f1",
            CaseId::F2 => "f2",
            CaseId::Gsobol => "gsobol",
        }
    }
}

/// One benchmark configuration: test function, target measure, training-size
/// grid, test-size range, and the preset herding lengthscale.
#[derive(Debug, Clone)]
pub struct TestCase {
    pub id: CaseId,
    pub dim: usize,
    pub mu: TargetMeasure,
    pub m_grid: Vec<usize>,
    pub n_min: usize,
    pub n_max: usize,
    /// Isotropic lengthscale of the selection/weighting kernel.
    pub theta: f64,
    /// Sobol candidate count (vertices are appended for uniform measures).
    pub n_candidates: usize,
    pub include_vertices: bool,
}

impl TestCase {
    pub fn preset(id: CaseId) -> TestCase {
        match id {
            CaseId::F1 => TestCase {
                id,
                dim: 2,
                mu: TargetMeasure::UnitCubeUniform(2),
                m_grid: vec![5, 15, 30],
                n_min: 4,
                n_max: 50,
                theta: 0.2,
                n_candidates: 1 << 14,
                include_vertices: true,
            },
            CaseId::F2 => TestCase {
                id,
                dim: 2,
                mu: TargetMeasure::standard_normal(2),
                m_grid: vec![8, 15, 30],
                n_min: 4,
                n_max: 50,
                theta: 0.2,
                n_candidates: 1 << 15,
                include_vertices: false,
            },
            CaseId::Gsobol => TestCase {
                id,
                dim: 8,
                mu: TargetMeasure::UnitCubeUniform(8),
                m_grid: vec![15, 30, 100],
                n_min: 4,
                n_max: 50,
                theta: 0.7,
                n_candidates: 1 << 14,
                include_vertices: true,
            },
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self.id {
            CaseId::F1 => f1(x),
            CaseId::F2 => f2(x),
            CaseId::Gsobol => gsobol(x),
        }
    }
}

// ---------------------------------------------------------------------------
// Sampling and the Monte-Carlo Q² baseline
// ---------------------------------------------------------------------------

/// Uniform draw in the open interval (0,1): safe to push through quantile
/// functions of unbounded marginals.
fn open_unit(rng: &mut Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Monte-Carlo sample from the target measure.
pub fn sample_measure(
    mu: &TargetMeasure,
    n: usize,
    rng: &mut Rng,
) -> Result<PointSet, BenchError> {
    let d = mu.dim();
    let mut data = Vec::with_capacity(n * d);
    match mu {
        TargetMeasure::UnitCubeUniform(_) => {
            for _ in 0..n * d {
                data.push(rng.next_f64());
            }
        }
        TargetMeasure::ProductMarginals(ms) => {
            for _ in 0..n {
                for m in ms {
                    data.push(m.inv_cdf(open_unit(rng)));
                }
            }
        }
        TargetMeasure::Empirical { points, weights } => {
            for _ in 0..n {
                let idx = match weights {
                    None => rng.next_index(points.len()),
                    Some(w) => {
                        let u = rng.next_f64();
                        let mut acc = 0.0;
                        let mut pick = points.len() - 1;
                        for (i, &wi) in w.iter().enumerate() {
                            acc += wi;
                            if u < acc {
                                pick = i;
                                break;
                            }
                        }
                        pick
                    }
                };
                data.extend_from_slice(points.row(idx));
            }
        }
    }
    Ok(PointSet::new(data, d)?)
}

/// Ground-truth predictivity against an `m_size`-point Monte-Carlo sample of
/// the target measure: `1 - sum (f - eta)^2 / sum (f - mean f)^2`.
pub fn q2_mc(
    f: &dyn Fn(&[f64]) -> f64,
    model: &KrigingModel,
    mu: &TargetMeasure,
    m_size: usize,
    seed: u64,
) -> Result<f64, BenchError> {
    if m_size < 1000 {
        return Err(BenchError::Invalid(format!(
            "Monte-Carlo sample size {m_size} below the minimum of 1000"
        )));
    }
    let mut rng = Rng::new(seed);
    let sample = sample_measure(mu, m_size, &mut rng)?;
    let y: Vec<f64> = sample.rows().map(|r| f(r)).collect();
    let eta = model.predict(&sample)?;
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let num: f64 = y.iter().zip(&eta).map(|(a, b)| (a - b) * (a - b)).sum();
    let den: f64 = y.iter().map(|a| (a - mean) * (a - mean)).sum();
    if den <= f64::MIN_POSITIVE * y.len() as f64 {
        return Err(BenchError::Invalid("degenerate response variance".into()));
    }
    Ok(1.0 - num / den)
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub method: String,
    pub m: usize,
    pub n: usize,
    pub metric: String,
    pub value: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BenchResult {
    pub rows: Vec<BenchRow>,
}

impl BenchResult {
    fn push(&mut self, method: &str, m: usize, n: usize, metric: &str, value: f64, seed: u64) {
        self.rows.push(BenchRow {
            method: method.into(),
            m,
            n,
            metric: metric.into(),
            value,
            seed,
        });
    }

    /// Long-format CSV: `method,m,n,metric,value,seed`, rows in grid order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,m,n,metric,value,seed\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.method, r.m, r.n, r.metric, r.value, r.seed
            ));
        }
        out
    }

    /// Value of the first row matching the given keys.
    pub fn get(&self, method: &str, m: usize, n: usize, metric: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.m == m && r.n == n && r.metric == metric)
            .map(|r| r.value)
    }

    pub fn extend(&mut self, other: BenchResult) {
        self.rows.extend(other.rows);
    }
}

pub fn method_name(m: SelectionMethod) -> &'static str {
    match m {
        SelectionMethod::FssfFr => "fssf",
        SelectionMethod::SupportPoints => "support-points",
        SelectionMethod::KernelHerding => "herding",
    }
}

fn cube_vertices(d: usize) -> PointSet {
    let mut verts = Vec::with_capacity((1usize << d) * d);
    for mask in 0..(1usize << d) {
        for k in 0..d {
            verts.push(if (mask >> k) & 1 == 1 { 1.0 } else { 0.0 });
        }
    }
    PointSet::new(verts, d).expect("vertex construction cannot fail")
}

// ---------------------------------------------------------------------------
// Incremental test-set protocol (analytic cases)
// ---------------------------------------------------------------------------

/// Full incremental-assessment protocol on one analytic case.
///
/// For every training size in the case's grid: fit an ordinary-kriging model
/// on a maximin Latin hypercube (pushed through the inverse transform for
/// non-uniform measures), record the Monte-Carlo and leave-one-out baselines,
/// then for each selection method grow a nested test set to `n_max` and
/// record the plain and optimally weighted predictivity coefficients at each
/// intermediate size.
pub fn run_section4(
    case: &TestCase,
    methods: &[SelectionMethod],
    seed: u64,
    mc_size: usize,
    mu_sample_size: usize,
) -> Result<BenchResult, BenchError> {
    let d = case.dim;
    let mut result = BenchResult::default();

    // candidate set in the unit cube and in the physical space
    let mut cube = sobol_sequence(d, case.n_candidates, 1)?;
    if case.include_vertices {
        cube = cube.concat(&cube_vertices(d))?;
    }
    let physical = iso_transform(&cube, &case.mu)?;

    // quadrature sample standing in for the target measure in the weight solve
    let mu_sample_cube = sobol_sequence(d, mu_sample_size, case.n_candidates + 1)?;
    let mu_sample = iso_transform(&mu_sample_cube, &case.mu)?;

    let sel_kernel = KernelSpec::matern52_tensor(vec![case.theta; d]);
    let root = Rng::new(seed);

    for (mi, &m) in case.m_grid.iter().enumerate() {
        let lhs_seed = derive_seed(&root, mi as u64);
        let lhs = maximin_lhs(d, m, lhs_seed)?;
        let x_m = iso_transform(&lhs, &case.mu)?;
        let y_m: Vec<f64> = x_m.rows().map(|r| case.eval(r)).collect();

        let model = fit(&x_m, &y_m, &FitConfig::default())?;
        let f = |x: &[f64]| case.eval(x);
        let mc = q2_mc(&f, &model, &case.mu, mc_size, derive_seed(&root, 1000 + mi as u64))?;
        result.push("baseline", m, 0, "q2_mc", mc, seed);
        let loo = loo_q2(&x_m, &y_m, &FitConfig::default())?;
        result.push("baseline", m, 0, "q2_loo", loo, seed);

        let ck = condition(&sel_kernel, &x_m)?;
        let eta_m = model.predict(&x_m)?;
        let delta = ErrorInterpolant::new(&ck, &y_m, &eta_m)?;

        for &method in methods {
            // nested selection: one state, n_max steps, prefixes reused
            let selected = if method == SelectionMethod::FssfFr {
                let mut st = selection_state(
                    method,
                    cube.clone(),
                    lhs.clone(),
                    &TargetMeasure::UnitCubeUniform(d),
                    &sel_kernel,
                    derive_seed(&root, 2000 + mi as u64),
                )?;
                for _ in 0..case.n_max {
                    st.next()?;
                }
                iso_transform(&st.selected_points(), &case.mu)?
            } else {
                let mut st = selection_state(
                    method,
                    physical.clone(),
                    x_m.clone(),
                    &case.mu,
                    &sel_kernel,
                    derive_seed(&root, 2000 + mi as u64),
                )?;
                for _ in 0..case.n_max {
                    st.next()?;
                }
                st.selected_points()
            };

            let y_sel: Vec<f64> = selected.rows().map(|r| case.eval(r)).collect();
            let eta_sel = model.predict(&selected)?;
            for n in case.n_min..=case.n_max {
                let prefix = selected.select(&(0..n).collect::<Vec<_>>());
                let wts = optimal_weights(&ck, &prefix, &mu_sample, Some(&delta))?;
                let report =
                    q2_report(&y_sel[..n], &eta_sel[..n], wts, Some(&y_m), None)?;
                let name = method_name(method);
                result.push(name, m, n, "q2_hat", report.q2_hat, seed);
                result.push(name, m, n, "q2_star", report.q2_star, seed);
            }
        }
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Split-ratio study (tabular datasets)
// ---------------------------------------------------------------------------

/// Selection kernel for splits of a tabular dataset: tensor-product
/// Matern-5/2 with per-coordinate lengthscales `range_j * n^(-1/d)`.
pub fn split_kernel(data: &PointSet, n_test: usize) -> KernelSpec {
    let d = data.dim();
    let factor = (n_test.max(2) as f64).powf(-1.0 / d as f64);
    let mut theta = Vec::with_capacity(d);
    for j in 0..d {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in data.rows() {
            lo = lo.min(r[j]);
            hi = hi.max(r[j]);
        }
        let range = if hi > lo { hi - lo } else { 1.0 };
        theta.push(range * factor);
    }
    KernelSpec::matern52_tensor(theta)
}

/// Splits a dataset into train/test index lists; the test set is the
/// method's incremental selection against the empirical measure of the full
/// dataset. FSSF scores candidates after an affine rescale to the unit cube.
pub fn split_indices(
    method: SelectionMethod,
    n_test: usize,
    data: &PointSet,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>), BenchError> {
    let n_total = data.len();
    if n_test == 0 || n_test >= n_total {
        return Err(BenchError::Invalid(format!(
            "test size {n_test} must lie strictly between 0 and the dataset size {n_total}"
        )));
    }
    let d = data.dim();
    let candidates = if method == SelectionMethod::FssfFr {
        // rescale each coordinate to [0,1] so the boundary term is defined
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for r in data.rows() {
            for j in 0..d {
                lo[j] = lo[j].min(r[j]);
                hi[j] = hi[j].max(r[j]);
            }
        }
        let mut scaled = Vec::with_capacity(n_total * d);
        for r in data.rows() {
            for j in 0..d {
                let w = hi[j] - lo[j];
                scaled.push(if w > 0.0 { (r[j] - lo[j]) / w } else { 0.5 });
            }
        }
        PointSet::new(scaled, d)?
    } else {
        data.clone()
    };
    let mu = TargetMeasure::Empirical { points: data.clone(), weights: None };
    let kernel = split_kernel(data, n_test);
    let mut st = selection_state(
        method,
        candidates,
        PointSet::empty(d),
        &mu,
        &kernel,
        seed,
    )?;
    for _ in 0..n_test {
        st.next()?;
    }
    let test: Vec<usize> = st.selected_indices().to_vec();
    let mut in_test = vec![false; n_total];
    for &i in &test {
        in_test[i] = true;
    }
    let train: Vec<usize> = (0..n_total).filter(|&i| !in_test[i]).collect();
    Ok((train, test))
}

fn subset(values: &[f64], idx: &[usize]) -> Vec<f64> {
    idx.iter().map(|&i| values[i]).collect()
}

/// Plain uniform-weight predictivity on a held-out set.
fn q2_plain(y: &[f64], eta: &[f64]) -> f64 {
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let num: f64 = y.iter().zip(eta).map(|(a, b)| (a - b) * (a - b)).sum();
    let den: f64 = y.iter().map(|a| (a - mean) * (a - mean)).sum();
    1.0 - num / den
}

/// Linear-interpolation quantile of a sorted sample.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

/// Split-ratio study: for each ratio, deterministic MMD-based splits
/// (herding and support points) with plain and weighted predictivity, the
/// sum of the optimal weights, and the quantiles of the random
/// cross-validation distribution over `reps` uniformly random splits.
///
/// Kriging lengthscales are estimated once on the full dataset and frozen
/// for every per-split refit, so each split only re-estimates the trend and
/// variance. Ratios leaving fewer than 3 training points are skipped.
pub fn run_split_study(
    data: &PointSet,
    y: &[f64],
    ratios: &[f64],
    reps: usize,
    seed: u64,
) -> Result<BenchResult, BenchError> {
    let n_total = data.len();
    if n_total < 20 {
        return Err(BenchError::Invalid(format!(
            "split study needs at least 20 points, got {n_total}"
        )));
    }
    if y.len() != n_total {
        return Err(BenchError::Invalid(format!(
            "{} responses for {n_total} points",
            y.len()
        )));
    }
    for &r in ratios {
        if !(r > 0.0 && r < 1.0) {
            return Err(BenchError::Invalid(format!("ratio {r} outside (0,1)")));
        }
    }

    // one maximum-likelihood fit on everything; per-split refits freeze theta
    let full = fit(data, y, &FitConfig::default())?;
    let frozen = FitConfig {
        theta_init: Some(full.lengthscales().to_vec()),
        optimize: false,
        ..FitConfig::default()
    };

    let mut result = BenchResult::default();
    let root = Rng::new(seed);

    for (ri, &ratio) in ratios.iter().enumerate() {
        let n_test = ((ratio * n_total as f64).round() as usize).clamp(1, n_total - 1);
        let m_train = n_total - n_test;
        if m_train < 3 {
            continue;
        }

        for method in [SelectionMethod::KernelHerding, SelectionMethod::SupportPoints] {
            let (train, test) = split_indices(
                method,
                n_test,
                data,
                derive_seed(&root, 3000 + ri as u64),
            )?;
            let x_m = data.select(&train);
            let y_m = subset(y, &train);
            let x_n = data.select(&test);
            let y_n = subset(y, &test);
            let model = fit(&x_m, &y_m, &frozen)?;
            let eta_n = model.predict(&x_n)?;

            let ck = condition(&split_kernel(data, n_test), &x_m)?;
            let eta_m = model.predict(&x_m)?;
            let delta = ErrorInterpolant::new(&ck, &y_m, &eta_m)?;
            let wts = optimal_weights(&ck, &x_n, data, Some(&delta))?;
            let weight_sum = wts.weight_sum();
            let report = q2_report(&y_n, &eta_n, wts, Some(&y_m), None)?;

            let name = method_name(method);
            result.push(name, m_train, n_test, "q2_hat", report.q2_hat, seed);
            result.push(name, m_train, n_test, "q2_star", report.q2_star, seed);
            result.push(name, m_train, n_test, "weight_sum", weight_sum, seed);
        }

        // random cross-validation distribution
        let mut q2s = Vec::with_capacity(reps);
        for rep in 0..reps {
            let mut rng = root.split(1_000_000 + (ri * reps + rep) as u64);
            let perm = rng.permutation(n_total);
            let test = &perm[..n_test];
            let train = &perm[n_test..];
            let x_m = data.select(train);
            let y_m = subset(y, train);
            let x_n = data.select(test);
            let y_n = subset(y, test);
            let model = fit(&x_m, &y_m, &frozen)?;
            let eta_n = model.predict(&x_n)?;
            q2s.push(q2_plain(&y_n, &eta_n));
        }
        q2s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (label, q) in [
            ("q05", 0.05),
            ("q25", 0.25),
            ("q50", 0.50),
            ("q75", 0.75),
            ("q95", 0.95),
        ] {
            result.push("rcv", m_train, n_test, label, quantile(&q2s, q), seed);
        }
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Synthetic tabular dataset for the split study
// ---------------------------------------------------------------------------

/// Marginals of the synthetic split-study dataset: alternating standard
/// normal and heavy-tailed lognormal coordinates in 8 dimensions.
pub fn synthetic_marginals() -> Vec<Marginal> {
    (0..8)
        .map(|i| {
            if i % 2 == 0 {
                Marginal::Normal { mean: 0.0, sd: 1.0 }
            } else {
                Marginal::LogNormal { mu: 0.0, sigma: 0.5 }
            }
        })
        .collect()
}

/// Synthetic stand-in dataset for the split-ratio study: `n` points from
/// the normal/lognormal product measure. The response is the gSobol
/// function on the coordinatewise CDF image plus an oscillatory term that
/// grows with the heavy-tailed physical coordinates, so the handful of
/// outlying observations are genuinely hard to predict.
///
/// The hard points are visible in input space: a representative (MMD-based)
/// split allocates them proportionally, while random small test sets
/// occasionally concentrate them, producing the heavy low-predictivity tail
/// the split study is meant to expose.
pub fn synthetic_dataset(n: usize, seed: u64) -> (PointSet, Vec<f64>) {
    let marginals = synthetic_marginals();
    let mu = TargetMeasure::ProductMarginals(marginals.clone());
    let mut rng = Rng::new(seed);
    let data = sample_measure(&mu, n, &mut rng).expect("product measure sampling cannot fail");
    let y: Vec<f64> = data
        .rows()
        .map(|r| {
            let u: Vec<f64> = r.iter().zip(&marginals).map(|(&x, m)| m.cdf(x)).collect();
            let gate = 0.5 * (1.0 + ((r[2] - 1.0) / 0.15).tanh());
            gsobol(&u) + 0.65 * gate * (6.0 * r[4]).sin()
        })
        .collect();
    (data, y)
}

/// First value of a derived stream; the parent generator is not consumed.
fn derive_seed(root: &Rng, label: u64) -> u64 {
    root.split(label).next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_at_center_and_transcription() {
        assert!((f1(&[0.5, 0.5]) - 3.2).abs() < 1e-14);
        // independently re-typed formula
        let oracle = |x1: f64, x2: f64| {
            let u1 = 2.0 * x1 - 1.0;
            let u2 = 2.0 * x2 - 1.0;
            (u1).exp() / 5.0 - u2 / 5.0
                + u2 * u2 * u2 * u2 * u2 * u2 / 3.0
                + 4.0 * u2 * u2 * u2 * u2
                - 4.0 * u2 * u2
                + 7.0 * u1 * u1 / 10.0
                + u1 * u1 * u1 * u1
                + 3.0 / (4.0 * u1 * u1 + 4.0 * u2 * u2 + 1.0)
        };
        let mut rng = Rng::new(12);
        for _ in 0..100 {
            let (a, b) = (rng.next_f64(), rng.next_f64());
            assert!((f1(&[a, b]) - oracle(a, b)).abs() < 1e-12);
        }
        // continuity
        let base = f1(&[0.3, 0.7]);
        assert!((f1(&[0.3 + 1e-9, 0.7]) - base).abs() <= 1e-6);
    }

    #[test]
    fn f2_value_transcription_and_partial() {
        let want = 5.0f64.cos() + 5.0f64.sin() + 0.25;
        assert!((f2(&[0.0, 0.0]) - want).abs() < 1e-12);
        assert!((want - (-0.425262)).abs() < 1e-6);
        let oracle = |x1: f64, x2: f64| {
            (5.0 + 1.5 * x1).cos()
                + (5.0 + 1.5 * x1).sin()
                + (5.0 + 1.5 * x1) * (5.0 + 1.5 * x2) / 100.0
        };
        let mut rng = Rng::new(13);
        for _ in 0..100 {
            let (a, b) = (4.0 * rng.next_f64() - 2.0, 4.0 * rng.next_f64() - 2.0);
            assert!((f2(&[a, b]) - oracle(a, b)).abs() < 1e-12);
        }
        // dependence on x2 is linear with slope (3/200)(5 + 1.5 x1)
        let (x1, x2) = (0.4, -0.8);
        let eps = 1e-5;
        let fd = (f2(&[x1, x2 + eps]) - f2(&[x1, x2 - eps])) / (2.0 * eps);
        assert!((fd - 0.015 * (5.0 + 1.5 * x1)).abs() < 1e-6);
    }

    #[test]
    fn gsobol_center_vertices_and_symmetry() {
        let center = [0.5; 8];
        let want: f64 = (1..=8)
            .map(|i| {
                let a = (i * i) as f64;
                a / (1.0 + a)
            })
            .product();
        assert!((gsobol(&center) - want).abs() < 1e-14);
        assert!((want - 0.3058678).abs() < 1e-6);

        let vertex = [0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0];
        let vwant: f64 = (1..=8)
            .map(|i| {
                let a = (i * i) as f64;
                (2.0 + a) / (1.0 + a)
            })
            .product();
        assert!((gsobol(&vertex) - vwant).abs() < 1e-13);

        let x = [0.1, 0.3, 0.55, 0.8, 0.2, 0.9, 0.47, 0.66];
        let mirrored: Vec<f64> = x.iter().map(|v| 1.0 - v).collect();
        assert!((gsobol(&x) - gsobol(&mirrored)).abs() < 1e-13);
    }

    #[test]
    fn q2_mc_perfect_and_mean_models() {
        let case = TestCase::preset(CaseId::F1);
        let lhs = maximin_lhs(2, 30, 9).unwrap();
        let y: Vec<f64> = lhs.rows().map(f1).collect();
        let model = fit(&lhs, &y, &FitConfig::default()).unwrap();
        // stability between seeds at M = 1e5
        let a = q2_mc(&|x: &[f64]| f1(x), &model, &case.mu, 100_000, 1).unwrap();
        let b = q2_mc(&|x: &[f64]| f1(x), &model, &case.mu, 100_000, 2).unwrap();
        assert!((a - b).abs() < 0.01, "q2_mc unstable: {a} vs {b}");

        // model predicting f exactly: a kriging fit through f itself is not
        // exact, so check the identity directly on the estimator instead
        let mut rng = Rng::new(3);
        let sample = sample_measure(&case.mu, 2000, &mut rng).unwrap();
        let ys: Vec<f64> = sample.rows().map(f1).collect();
        assert!((q2_plain(&ys, &ys) - 1.0).abs() < 1e-12);
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        let q0 = q2_plain(&ys, &vec![mean; ys.len()]);
        assert!(q0.abs() < 1.0 / (ys.len() as f64).sqrt() * 3.0);
    }

    #[test]
    fn q2_mc_rejects_small_samples() {
        let lhs = maximin_lhs(2, 5, 9).unwrap();
        let y: Vec<f64> = lhs.rows().map(f1).collect();
        let model = fit(&lhs, &y, &FitConfig::default()).unwrap();
        assert!(q2_mc(
            &|x: &[f64]| f1(x),
            &model,
            &TargetMeasure::UnitCubeUniform(2),
            10,
            0
        )
        .is_err());
    }

    #[test]
    fn split_partition_property() {
        let (data, _) = synthetic_dataset(60, 4);
        for method in [
            SelectionMethod::KernelHerding,
            SelectionMethod::SupportPoints,
            SelectionMethod::FssfFr,
        ] {
            let (train, test) = split_indices(method, 12, &data, 7).unwrap();
            assert_eq!(train.len() + test.len(), 60);
            let mut seen = vec![false; 60];
            for &i in train.iter().chain(test.iter()) {
                assert!(!seen[i], "index {i} repeated");
                seen[i] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn split_study_rows_are_deterministic_and_finite() {
        let (data, y) = synthetic_dataset(40, 11);
        let ratios = [0.3, 0.5];
        let a = run_split_study(&data, &y, &ratios, 10, 5).unwrap();
        let b = run_split_study(&data, &y, &ratios, 10, 5).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(!a.rows.is_empty());
        for row in &a.rows {
            assert!(row.value.is_finite(), "non-finite {}: {}", row.metric, row.value);
            if row.metric.starts_with('q') {
                assert!(row.value <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn section4_nestedness_and_grid_completeness() {
        let mut case = TestCase::preset(CaseId::F1);
        case.m_grid = vec![5];
        case.n_max = 12;
        case.n_candidates = 1 << 10;
        let methods = [
            SelectionMethod::KernelHerding,
            SelectionMethod::FssfFr,
            SelectionMethod::SupportPoints,
        ];
        let res = run_section4(&case, &methods, 3, 1000, 256).unwrap();
        for method in methods {
            for n in case.n_min..=case.n_max {
                for metric in ["q2_hat", "q2_star"] {
                    let v = res.get(method_name(method), 5, n, metric);
                    assert!(v.is_some(), "missing {metric} at n={n}");
                    let v = v.unwrap();
                    assert!(v.is_finite() && v <= 1.0 + 1e-12, "{metric}={v}");
                }
            }
        }
        assert!(res.get("baseline", 5, 0, "q2_mc").is_some());
        assert!(res.get("baseline", 5, 0, "q2_loo").is_some());
    }

    #[test]
    fn synthetic_dataset_is_reproducible() {
        let (a, ya) = synthetic_dataset(30, 1);
        let (b, yb) = synthetic_dataset(30, 1);
        for (ra, rb) in a.rows().zip(b.rows()) {
            assert_eq!(ra, rb);
        }
        assert_eq!(ya, yb);
        // gSobol lives in [0.306, 3.27]; the localized term adds at most 0.65
        assert!(ya.iter().all(|&v| v.is_finite() && v > -0.35 && v < 4.0));
    }
}
