//! Residual weighting under the Gaussian-process error model, and the
//! predictivity estimators built on it.
//!
//! The prediction error is modelled as a GP with mean given by the kriging
//! interpolator of the training residuals and covariance proportional to the
//! conditioned kernel. The fourth-moment kernel of that process determines
//! the test-point weights minimizing the expected squared ISE-estimation
//! error; the weighted residual average then feeds the bias-corrected
//! predictivity coefficients.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::kernels::{kbar_value, ConditionedKernel, Whitened};
use crate::linalg::{residual_inf_norm, Cholesky};
use crate::measures::PointSet;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightingError {
    LengthMismatch { expected: usize, got: usize },
    DimensionMismatch { expected: usize, got: usize },
    /// A test point coincides with a training point, so the fourth-moment
    /// Gram matrix is singular.
    Overlap { test_index: usize, train_index: usize },
    Conditioning(String),
    EmptySample,
    EmptyTestSet,
    DegenerateDenominator,
    TooFewPoints { got: usize },
}

impl core::fmt::Display for WeightingError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WeightingError::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            WeightingError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            WeightingError::Overlap { test_index, train_index } => write!(
                f,
                "test point {test_index} coincides with training point {train_index}"
            ),
            WeightingError::Conditioning(s) => write!(f, "conditioning failure: {s}"),
            WeightingError::EmptySample => write!(f, "target-measure sample is empty"),
            WeightingError::EmptyTestSet => write!(f, "test set is empty"),
            WeightingError::DegenerateDenominator => {
                write!(f, "denominator is zero: observations are constant")
            }
            WeightingError::TooFewPoints { got } => {
                write!(f, "need at least 2 test observations, got {got}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    Uniform,
    Optimal,
    OptimalPrime,
}

/// Test points together with the weights applied to their squared residuals.
#[derive(Debug, Clone)]
pub struct WeightedTestSet {
    pub points: PointSet,
    pub weights: Vec<f64>,
    pub scheme: WeightScheme,
    /// `max_i |Kbar w - p|_i` from the weight solve; zero for uniform.
    pub solver_residual: f64,
    /// Jitter added to the fourth-moment Gram matrix; zero for uniform.
    pub jitter: f64,
}

impl WeightedTestSet {
    pub fn uniform(points: PointSet) -> Self {
        let n = points.len();
        WeightedTestSet {
            points,
            weights: vec![1.0 / n as f64; n],
            scheme: WeightScheme::Uniform,
            solver_residual: 0.0,
            jitter: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Kriging interpolator of the training residuals `y_m - eta_m`.
#[derive(Debug, Clone)]
pub struct ErrorInterpolant {
    ck: ConditionedKernel,
    coeffs: Vec<f64>,
    is_zero: bool,
}

impl ErrorInterpolant {
    /// Builds the interpolator. When the residuals vanish relative to the
    /// spread of `y_m` (max below `1e-9 * range(y_m)`) the interpolant is
    /// pinned to zero so solver noise is not amplified downstream.
    pub fn new(
        ck: &ConditionedKernel,
        y_m: &[f64],
        eta_m: &[f64],
    ) -> Result<Self, WeightingError> {
        let m = ck.training_size();
        if y_m.len() != m {
            return Err(WeightingError::LengthMismatch { expected: m, got: y_m.len() });
        }
        if eta_m.len() != m {
            return Err(WeightingError::LengthMismatch { expected: m, got: eta_m.len() });
        }
        let resid: Vec<f64> = y_m.iter().zip(eta_m).map(|(y, e)| y - e).collect();
        let max_resid = resid.iter().fold(0.0_f64, |a, r| a.max(r.abs()));
        let (lo, hi) = y_m
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| (lo.min(y), hi.max(y)));
        let range = (hi - lo).max(0.0);
        let is_zero = max_resid <= 1e-9 * range;
        let coeffs = if is_zero { vec![0.0; m] } else { ck.solve_training(&resid) };
        Ok(ErrorInterpolant { ck: ck.clone(), coeffs, is_zero })
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    /// `delta_hat(x) = k_m(x)^T K_m^{-1} (y_m - eta_m)`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        if self.is_zero {
            return 0.0;
        }
        self.ck
            .k_vec(x)
            .iter()
            .zip(&self.coeffs)
            .map(|(k, c)| k * c)
            .sum()
    }
}

/// Mean of the GP error model entering the fourth-moment kernel.
pub enum ErrorMean<'a> {
    /// Interpolating predictor: the error process is centred.
    Zero,
    /// General case: mean is the residual interpolant.
    Interpolant(&'a ErrorInterpolant),
    /// Denominator weighting: mean is the centred predictor
    /// `x -> eta_m(x) - y_bar_m`.
    CentredPredictor { predictor: &'a dyn Fn(&[f64]) -> f64, y_bar_m: f64 },
}

impl ErrorMean<'_> {
    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            ErrorMean::Zero => 0.0,
            ErrorMean::Interpolant(d) => d.eval(x),
            ErrorMean::CentredPredictor { predictor, y_bar_m } => predictor(x) - y_bar_m,
        }
    }

    fn from_delta(delta: Option<&ErrorInterpolant>) -> ErrorMean<'_> {
        match delta {
            Some(d) if !d.is_zero() => ErrorMean::Interpolant(d),
            _ => ErrorMean::Zero,
        }
    }
}

/// Per-batch caches for fourth-moment kernel evaluations: whitened
/// cross-covariances, conditioned variances and error means.
struct KbarBatch<'a> {
    pts: &'a PointSet,
    w: Whitened,
    diag: Vec<f64>,
    mean: Vec<f64>,
}

impl<'a> KbarBatch<'a> {
    fn new(ck: &ConditionedKernel, pts: &'a PointSet, mean: &ErrorMean<'_>) -> Self {
        let w = ck.whiten(pts);
        let diag: Vec<f64> = (0..pts.len())
            .map(|i| ck.cond_from_whitened(pts.row(i), w.row(i), pts.row(i), w.row(i)))
            .collect();
        let means: Vec<f64> = pts.rows().map(|r| mean.eval(r)).collect();
        KbarBatch { pts, w, diag, mean: means }
    }
}

fn kbar_between(ck: &ConditionedKernel, a: &KbarBatch, i: usize, b: &KbarBatch, j: usize) -> f64 {
    let kxy = ck.cond_from_whitened(a.pts.row(i), a.w.row(i), b.pts.row(j), b.w.row(j));
    kbar_value(a.diag[i], b.diag[j], kxy, a.mean[i], b.mean[j])
}

fn check_inputs(
    ck: &ConditionedKernel,
    x_n: &PointSet,
    mu_sample: &PointSet,
) -> Result<(), WeightingError> {
    if x_n.is_empty() {
        return Err(WeightingError::EmptyTestSet);
    }
    if mu_sample.is_empty() {
        return Err(WeightingError::EmptySample);
    }
    for set in [x_n, mu_sample] {
        if set.dim() != ck.dim() {
            return Err(WeightingError::DimensionMismatch {
                expected: ck.dim(),
                got: set.dim(),
            });
        }
    }
    let train = ck.training_design();
    for (ti, t) in x_n.rows().enumerate() {
        for (mi, m) in train.rows().enumerate() {
            if t.iter().zip(m).all(|(a, b)| (a - b).abs() <= 1e-12) {
                return Err(WeightingError::Overlap { test_index: ti, train_index: mi });
            }
        }
    }
    Ok(())
}

fn solve_weights(
    ck: &ConditionedKernel,
    x_n: &PointSet,
    mu_sample: &PointSet,
    mean: &ErrorMean<'_>,
    scheme: WeightScheme,
) -> Result<WeightedTestSet, WeightingError> {
    check_inputs(ck, x_n, mu_sample)?;
    let n = x_n.len();
    let tb = KbarBatch::new(ck, x_n, mean);
    let sb = KbarBatch::new(ck, mu_sample, mean);

    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = kbar_between(ck, &tb, i, &tb, j);
            gram[i * n + j] = v;
            gram[j * n + i] = v;
        }
    }
    let inv_s = 1.0 / mu_sample.len() as f64;
    let p: Vec<f64> = (0..n)
        .map(|i| (0..mu_sample.len()).map(|k| kbar_between(ck, &tb, i, &sb, k)).sum::<f64>() * inv_s)
        .collect();

    let ch = Cholesky::new_with_jitter(&gram, n)
        .map_err(|e| WeightingError::Conditioning(alloc::format!("{e}")))?;
    let weights = ch.solve(&p);
    let solver_residual = residual_inf_norm(&gram, n, &weights, &p);
    Ok(WeightedTestSet {
        points: x_n.clone(),
        weights,
        scheme,
        solver_residual,
        jitter: ch.jitter(),
    })
}

/// Optimal unconstrained weights `w* = Kbar^{-1}(X_n) p_{Kbar,mu}(X_n)`.
///
/// The target potential of the fourth-moment kernel has no closed form, so
/// it is always evaluated against the empirical sample `mu_sample`. Pass the
/// residual interpolant for non-interpolating predictors, `None` otherwise.
pub fn optimal_weights(
    ck: &ConditionedKernel,
    x_n: &PointSet,
    mu_sample: &PointSet,
    delta: Option<&ErrorInterpolant>,
) -> Result<WeightedTestSet, WeightingError> {
    solve_weights(ck, x_n, mu_sample, &ErrorMean::from_delta(delta), WeightScheme::Optimal)
}

/// Denominator weights `w'*` of the fourth-moment kernel whose error mean is
/// the centred predictor `eta_m - y_bar_m`.
pub fn optimal_weights_prime(
    ck: &ConditionedKernel,
    x_n: &PointSet,
    mu_sample: &PointSet,
    predictor: &dyn Fn(&[f64]) -> f64,
    y_bar_m: f64,
) -> Result<WeightedTestSet, WeightingError> {
    solve_weights(
        ck,
        x_n,
        mu_sample,
        &ErrorMean::CentredPredictor { predictor, y_bar_m },
        WeightScheme::OptimalPrime,
    )
}

/// Squared MMD between the weighted test measure and the empirical target
/// under the fourth-moment kernel, including the target energy term.
pub fn kbar_mmd_sq(
    ck: &ConditionedKernel,
    wts: &WeightedTestSet,
    mu_sample: &PointSet,
    delta: Option<&ErrorInterpolant>,
) -> Result<f64, WeightingError> {
    check_inputs(ck, &wts.points, mu_sample)?;
    let mean = ErrorMean::from_delta(delta);
    let tb = KbarBatch::new(ck, &wts.points, &mean);
    let sb = KbarBatch::new(ck, mu_sample, &mean);
    let n = wts.points.len();
    let s = mu_sample.len();
    let w = &wts.weights;

    let mut quad = 0.0;
    for i in 0..n {
        quad += w[i] * w[i] * kbar_between(ck, &tb, i, &tb, i);
        for j in i + 1..n {
            quad += 2.0 * w[i] * w[j] * kbar_between(ck, &tb, i, &tb, j);
        }
    }
    let mut cross = 0.0;
    for i in 0..n {
        let mut pi = 0.0;
        for k in 0..s {
            pi += kbar_between(ck, &tb, i, &sb, k);
        }
        cross += w[i] * pi / s as f64;
    }
    let mut energy = 0.0;
    for k in 0..s {
        energy += kbar_between(ck, &sb, k, &sb, k);
        for l in k + 1..s {
            energy += 2.0 * kbar_between(ck, &sb, k, &sb, l);
        }
    }
    energy /= (s * s) as f64;
    Ok(quad - 2.0 * cross + energy)
}

/// Predicted mean-squared error of the weighted ISE estimate:
/// `sigma^2 * d^2_{Kbar}(zeta, mu_sample)`.
pub fn delta_bar_sq(
    ck: &ConditionedKernel,
    wts: &WeightedTestSet,
    mu_sample: &PointSet,
    delta: Option<&ErrorInterpolant>,
    sigma_sq: f64,
) -> Result<f64, WeightingError> {
    Ok(sigma_sq * kbar_mmd_sq(ck, wts, mu_sample, delta)?)
}

/// Predictivity coefficients of a surrogate on a weighted test set.
#[derive(Debug, Clone)]
pub struct PredictivityReport {
    /// Uniform-weight coefficient `1 - ISE_uniform / V_n`.
    pub q2_hat: f64,
    /// Optimally weighted numerator over the uniform denominator.
    pub q2_star: f64,
    /// Training-mean denominator variant; present when `y_m` is supplied.
    pub q2_prime: Option<f64>,
    /// Variant with the `w'*`-weighted denominator; present when prime
    /// weights are supplied alongside `y_m`.
    pub q2_prime_star: Option<f64>,
    /// `(1/n) sum (y_i - eta_i)^2`.
    pub ise_uniform: f64,
    /// `sum w_i (y_i - eta_i)^2`.
    pub ise_weighted: f64,
    /// `(1/n) sum (y_i - y_bar_n)^2`.
    pub denom_uniform: f64,
    pub weights: WeightedTestSet,
    pub solver_residual: f64,
    pub jitter: f64,
}

/// Computes all predictivity coefficients from test observations `y_n`,
/// predictions `eta_n` and a weighted test set.
///
/// `y_m` enables the training-mean denominator variant; `prime_weights`
/// additionally enables its `w'*`-weighted denominator. The weighted
/// numerator and weighted denominator are never combined: the weighted
/// denominator always divides the uniform numerator.
pub fn q2_report(
    y_n: &[f64],
    eta_n: &[f64],
    wts: WeightedTestSet,
    y_m: Option<&[f64]>,
    prime_weights: Option<&WeightedTestSet>,
) -> Result<PredictivityReport, WeightingError> {
    let n = wts.len();
    if y_n.len() != n {
        return Err(WeightingError::LengthMismatch { expected: n, got: y_n.len() });
    }
    if eta_n.len() != n {
        return Err(WeightingError::LengthMismatch { expected: n, got: eta_n.len() });
    }
    if n < 2 {
        return Err(WeightingError::TooFewPoints { got: n });
    }
    if let Some(pw) = prime_weights {
        if pw.len() != n {
            return Err(WeightingError::LengthMismatch { expected: n, got: pw.len() });
        }
    }

    let inv_n = 1.0 / n as f64;
    let sq_resid: Vec<f64> = y_n.iter().zip(eta_n).map(|(y, e)| (y - e) * (y - e)).collect();
    let ise_uniform = sq_resid.iter().sum::<f64>() * inv_n;
    let ise_weighted = sq_resid.iter().zip(&wts.weights).map(|(r, w)| r * w).sum::<f64>();

    let y_bar_n = y_n.iter().sum::<f64>() * inv_n;
    let denom_uniform =
        y_n.iter().map(|y| (y - y_bar_n) * (y - y_bar_n)).sum::<f64>() * inv_n;
    if denom_uniform <= 0.0 {
        return Err(WeightingError::DegenerateDenominator);
    }

    let q2_hat = 1.0 - ise_uniform / denom_uniform;
    let q2_star = 1.0 - ise_weighted / denom_uniform;

    let (q2_prime, q2_prime_star) = match y_m {
        None => (None, None),
        Some(ym) => {
            if ym.is_empty() {
                return Err(WeightingError::LengthMismatch { expected: 1, got: 0 });
            }
            let y_bar_m = ym.iter().sum::<f64>() / ym.len() as f64;
            let dev: Vec<f64> = y_n.iter().map(|y| (y - y_bar_m) * (y - y_bar_m)).collect();
            let denom_prime = dev.iter().sum::<f64>() * inv_n;
            if denom_prime <= 0.0 {
                return Err(WeightingError::DegenerateDenominator);
            }
            let prime = 1.0 - ise_uniform / denom_prime;
            let prime_star = prime_weights.map(|pw| {
                let d = dev.iter().zip(&pw.weights).map(|(v, w)| v * w).sum::<f64>();
                1.0 - ise_uniform / d
            });
            (Some(prime), prime_star)
        }
    };

    Ok(PredictivityReport {
        q2_hat,
        q2_star,
        q2_prime,
        q2_prime_star,
        ise_uniform,
        ise_weighted,
        denom_uniform,
        solver_residual: wts.solver_residual,
        jitter: wts.jitter,
        weights: wts,
    })
}
