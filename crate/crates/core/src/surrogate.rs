//! Ordinary-kriging regression: the model under test in the experiments.
//!
//! Constant mean, anisotropic Matern-5/2 correlation, hyperparameters by
//! maximum likelihood over the concentrated criterion using a bounded
//! derivative-free direct search.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, log};

use crate::kernels::{gram, KernelSpec};
use crate::linalg::Cholesky;
use crate::measures::{dist, PointSet};

#[derive(Debug, Clone, PartialEq)]
pub enum SurrogateError {
    TooFewPoints { got: usize, need: usize },
    DegenerateDesign { row_a: usize, row_b: usize },
    NonFiniteObservation { index: usize },
    LengthMismatch { expected: usize, got: usize },
    DimensionMismatch { expected: usize, got: usize },
    DegenerateDenominator,
    Conditioning(String),
}

impl core::fmt::Display for SurrogateError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SurrogateError::TooFewPoints { got, need } => {
                write!(f, "need at least {need} training points, got {got}")
            }
            SurrogateError::DegenerateDesign { row_a, row_b } => {
                write!(f, "training rows {row_a} and {row_b} coincide")
            }
            SurrogateError::NonFiniteObservation { index } => {
                write!(f, "observation {index} is not finite")
            }
            SurrogateError::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            SurrogateError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            SurrogateError::DegenerateDenominator => {
                write!(f, "observations are constant: predictivity denominator is zero")
            }
            SurrogateError::Conditioning(s) => write!(f, "conditioning failure: {s}"),
        }
    }
}

/// Hyperparameter-fitting configuration.
#[derive(Debug, Clone)]
pub struct FitConfig {
    /// Initial lengthscales; defaults to the geometric mean of the bounds.
    pub theta_init: Option<Vec<f64>>,
    /// When false, `theta_init` (or the default start) is used as-is.
    pub optimize: bool,
    /// Number of multi-start searches.
    pub starts: usize,
    /// Likelihood-evaluation budget per start.
    pub max_evals: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { theta_init: None, optimize: true, starts: 3, max_evals: 200 }
    }
}

/// Fitted ordinary-kriging model.
#[derive(Debug, Clone)]
pub struct KrigingModel {
    x_m: PointSet,
    y_m: Vec<f64>,
    kernel: KernelSpec,
    beta: f64,
    /// `K_m^{-1} (y - beta 1)`.
    dual: Vec<f64>,
    sigma2: f64,
    log_likelihood: f64,
    jitter: f64,
}

/// Concentrated log-likelihood pieces for a fixed correlation matrix.
struct Concentrated {
    chol: Cholesky,
    beta: f64,
    sigma2: f64,
    log_likelihood: f64,
}

fn concentrated(spec: &KernelSpec, x_m: &PointSet, y: &[f64]) -> Option<Concentrated> {
    let m = x_m.len();
    let g = gram(spec, x_m, x_m).ok()?;
    let chol = Cholesky::new_with_jitter(&g, m).ok()?;
    let ones = vec![1.0; m];
    let ri_one = chol.solve(&ones);
    let ri_y = chol.solve(y);
    let one_ri_one: f64 = ri_one.iter().sum();
    let one_ri_y: f64 = ri_y.iter().sum();
    if one_ri_one <= 0.0 {
        return None;
    }
    let beta = one_ri_y / one_ri_one;
    let mut quad = 0.0;
    for i in 0..m {
        quad += (y[i] - beta) * (ri_y[i] - beta * ri_one[i]);
    }
    let sigma2 = (quad / m as f64).max(1e-300);
    let log_likelihood = -0.5 * (m as f64 * log(sigma2) + chol.log_det());
    Some(Concentrated { chol, beta, sigma2, log_likelihood })
}

/// Coordinate-wise pattern search on log-lengthscales within bounds.
fn direct_search(
    x_m: &PointSet,
    y: &[f64],
    start: &[f64],
    lo: &[f64],
    hi: &[f64],
    max_evals: usize,
) -> (Vec<f64>, f64) {
    let d = start.len();
    let clamp = |v: f64, j: usize| v.max(log(lo[j])).min(log(hi[j]));
    let mut cur: Vec<f64> = (0..d).map(|j| clamp(log(start[j]), j)).collect();
    let eval = |t: &[f64]| -> f64 {
        let theta: Vec<f64> = t.iter().map(|&v| exp(v)).collect();
        let spec = KernelSpec::matern52_aniso(theta);
        concentrated(&spec, x_m, y).map_or(f64::NEG_INFINITY, |c| c.log_likelihood)
    };
    let mut best = eval(&cur);
    let mut evals = 1usize;
    let mut step = 0.5;
    while step > 1e-3 && evals < max_evals {
        let mut improved = false;
        for j in 0..d {
            for sign in [1.0, -1.0] {
                if evals >= max_evals {
                    break;
                }
                let mut cand = cur.clone();
                cand[j] = clamp(cand[j] + sign * step, j);
                if cand[j] == cur[j] {
                    continue;
                }
                let v = eval(&cand);
                evals += 1;
                if v > best {
                    best = v;
                    cur = cand;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (cur.iter().map(|&v| exp(v)).collect(), best)
}

/// Per-dimension coordinate ranges of the design, floored at 1 for
/// degenerate (constant) columns.
fn coordinate_ranges(x_m: &PointSet) -> Vec<f64> {
    let d = x_m.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for r in x_m.rows() {
        for j in 0..d {
            lo[j] = lo[j].min(r[j]);
            hi[j] = hi[j].max(r[j]);
        }
    }
    (0..d)
        .map(|j| {
            let range = hi[j] - lo[j];
            if range > 0.0 {
                range
            } else {
                1.0
            }
        })
        .collect()
}

/// Fits an ordinary-kriging model by maximum likelihood.
///
/// Lengthscales are bounded to `[0.05, 5]` times the per-dimension data
/// range; with `optimize` the concentrated log-likelihood is maximized by
/// multi-start direct search within those bounds.
pub fn fit(x_m: &PointSet, y_m: &[f64], config: &FitConfig) -> Result<KrigingModel, SurrogateError> {
    let m = x_m.len();
    if m < 2 {
        return Err(SurrogateError::TooFewPoints { got: m, need: 2 });
    }
    if y_m.len() != m {
        return Err(SurrogateError::LengthMismatch { expected: m, got: y_m.len() });
    }
    for (i, y) in y_m.iter().enumerate() {
        if !y.is_finite() {
            return Err(SurrogateError::NonFiniteObservation { index: i });
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if dist(x_m.row(i), x_m.row(j)) == 0.0 {
                return Err(SurrogateError::DegenerateDesign { row_a: i, row_b: j });
            }
        }
    }

    let ranges = coordinate_ranges(x_m);
    let lo: Vec<f64> = ranges.iter().map(|r| 0.05 * r).collect();
    let hi: Vec<f64> = ranges.iter().map(|r| 5.0 * r).collect();
    let default_start: Vec<f64> =
        lo.iter().zip(&hi).map(|(a, b)| libm::sqrt(a * b)).collect();
    let init = config.theta_init.clone().unwrap_or(default_start.clone());
    if init.len() != x_m.dim() {
        return Err(SurrogateError::DimensionMismatch { expected: x_m.dim(), got: init.len() });
    }

    let theta = if config.optimize {
        // Multi-start: the caller's initial point plus spread-out fractions
        // of the data range.
        let mut starts: Vec<Vec<f64>> = vec![init.clone()];
        for frac in [0.1, 2.0] {
            if starts.len() >= config.starts.max(1) {
                break;
            }
            starts.push(ranges.iter().map(|r| frac * r).collect());
        }
        starts.truncate(config.starts.max(1));
        let mut best_theta = init.clone();
        let mut best_ll = f64::NEG_INFINITY;
        for s in &starts {
            let (t, ll) = direct_search(x_m, y_m, s, &lo, &hi, config.max_evals);
            if ll > best_ll {
                best_ll = ll;
                best_theta = t;
            }
        }
        best_theta
    } else {
        init
    };

    let spec = KernelSpec::matern52_aniso(theta);
    let c = concentrated(&spec, x_m, y_m).ok_or_else(|| {
        SurrogateError::Conditioning("correlation matrix is not positive definite".into())
    })?;
    let centred: Vec<f64> = y_m.iter().map(|y| y - c.beta).collect();
    let dual = c.chol.solve(&centred);
    Ok(KrigingModel {
        x_m: x_m.clone(),
        y_m: y_m.to_vec(),
        kernel: spec,
        beta: c.beta,
        dual,
        sigma2: c.sigma2,
        log_likelihood: c.log_likelihood,
        jitter: c.chol.jitter(),
    })
}

impl KrigingModel {
    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn training_design(&self) -> &PointSet {
        &self.x_m
    }

    pub fn training_observations(&self) -> &[f64] {
        &self.y_m
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lengthscales(&self) -> &[f64] {
        &self.kernel.lengthscales
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn log_likelihood(&self) -> f64 {
        self.log_likelihood
    }

    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// `eta(x) = beta + k_m(x)^T K_m^{-1} (y - beta 1)`.
    pub fn predict_one(&self, x: &[f64]) -> Result<f64, SurrogateError> {
        if x.len() != self.x_m.dim() {
            return Err(SurrogateError::DimensionMismatch {
                expected: self.x_m.dim(),
                got: x.len(),
            });
        }
        let mut s = self.beta;
        for (r, c) in self.x_m.rows().zip(&self.dual) {
            s += self.kernel.eval(x, r) * c;
        }
        Ok(s)
    }

    pub fn predict(&self, pts: &PointSet) -> Result<Vec<f64>, SurrogateError> {
        pts.rows().map(|r| self.predict_one(r)).collect()
    }
}

/// Leave-one-out predictivity with full model refits.
///
/// Each fold repeats the complete fitting procedure (including lengthscale
/// re-estimation when `config.optimize` is set) on the remaining points, so
/// no closed-form LOO shortcut applies.
pub fn loo_q2(x_m: &PointSet, y_m: &[f64], config: &FitConfig) -> Result<f64, SurrogateError> {
    let m = x_m.len();
    if m < 3 {
        return Err(SurrogateError::TooFewPoints { got: m, need: 3 });
    }
    if y_m.len() != m {
        return Err(SurrogateError::LengthMismatch { expected: m, got: y_m.len() });
    }
    let y_bar = y_m.iter().sum::<f64>() / m as f64;
    let denom: f64 = y_m.iter().map(|y| (y - y_bar) * (y - y_bar)).sum();
    if denom <= 0.0 {
        return Err(SurrogateError::DegenerateDenominator);
    }
    let mut num = 0.0;
    for i in 0..m {
        let keep: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        let x_sub = x_m.select(&keep);
        let y_sub: Vec<f64> = keep.iter().map(|&j| y_m[j]).collect();
        let model = fit(&x_sub, &y_sub, config)?;
        let pred = model.predict_one(x_m.row(i))?;
        num += (y_m[i] - pred) * (y_m[i] - pred);
    }
    Ok(1.0 - num / denom)
}
