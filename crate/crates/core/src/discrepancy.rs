//! Kernel embeddings (potentials) of target measures and squared maximum
//! mean discrepancy between weighted point sets and a target.
//!
//! Analytic potentials are available for tensor-product Matern-5/2 kernels
//! against uniform-on-[0,1] and standard-normal marginals; every other
//! kernel/measure combination goes through the empirical (quadrature-sample)
//! route.

use alloc::string::String;
use alloc::vec::Vec;
use libm::exp;

use crate::kernels::{KernelFamily, KernelForm, KernelSpec};
use crate::measures::{Marginal, PointSet, TargetMeasure};
use crate::special::{erfc_acc, erfcx, SQRT_2, SQRT_2PI};

const SQRT_5: f64 = 2.236_067_977_499_79;

#[derive(Debug, Clone, PartialEq)]
pub enum DiscrepancyError {
    DomainViolation(String),
    Unsupported(String),
    DimensionMismatch { expected: usize, got: usize },
    MissingQuadrature,
    BadWeights(String),
}

impl core::fmt::Display for DiscrepancyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DiscrepancyError::DomainViolation(s) => write!(f, "domain violation: {s}"),
            DiscrepancyError::Unsupported(s) => write!(f, "unsupported: {s}"),
            DiscrepancyError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            DiscrepancyError::MissingQuadrature => write!(
                f,
                "energy constant of an analytic measure requires a quadrature sample"
            ),
            DiscrepancyError::BadWeights(s) => write!(f, "bad weights: {s}"),
        }
    }
}

/// Potential of the uniform measure on `[0,1]` under the Matern-5/2 kernel
/// with lengthscale `theta`, evaluated at `x` in `[0,1]`.
pub fn potential_uniform_matern52(x: f64, theta: f64) -> Result<f64, DiscrepancyError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(DiscrepancyError::DomainViolation(alloc::format!("x = {x} outside [0,1]")));
    }
    if !(theta > 0.0) {
        return Err(DiscrepancyError::DomainViolation("theta must be positive".into()));
    }
    let s = |t: f64| -> f64 {
        exp(-SQRT_5 * t / theta) * (5.0 * SQRT_5 * t * t + 25.0 * theta * t + 8.0 * SQRT_5 * theta * theta)
    };
    Ok(16.0 * theta / (3.0 * SQRT_5) - (s(x) + s(1.0 - x)) / (15.0 * theta))
}

// One-sided term of the standard-normal potential. The erfc factor is
// combined with its exponential through the scaled form: with
// z = (sqrt(5)/theta - x)/sqrt(2) the exponent satisfies
// b - z^2 = -x^2/2, so erfc(z) exp(b) = erfcx(z) exp(-x^2/2) for z >= 0.
fn normal_half_term(x: f64, theta: f64) -> f64 {
    let it = 1.0 / (theta * theta); // 1/theta^2
    let poly = (5.0 * it * x * x + (3.0 - 10.0 * it) * (SQRT_5 / theta) * x
        + 5.0 * it * (5.0 * it - 2.0)
        + 3.0)
        / 6.0;
    let z = (SQRT_5 / theta - x) / SQRT_2;
    let erfc_exp = if z >= 0.0 {
        erfcx(z) * exp(-0.5 * x * x)
    } else {
        // here b = 5/(2 theta^2) - sqrt(5) x / theta < 0, no overflow
        erfc_acc(z) * exp(5.0 * it / 2.0 - SQRT_5 * x / theta)
    };
    poly * erfc_exp + (SQRT_5 / theta) * (3.0 - 5.0 * it) * exp(-0.5 * x * x) / (3.0 * SQRT_2PI)
}

/// Potential of the standard normal measure under the Matern-5/2 kernel
/// with lengthscale `theta`.
pub fn potential_normal_matern52(x: f64, theta: f64) -> Result<f64, DiscrepancyError> {
    if !(theta > 0.0) {
        return Err(DiscrepancyError::DomainViolation("theta must be positive".into()));
    }
    Ok(normal_half_term(x, theta) + normal_half_term(-x, theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AnalyticMarginal {
    Uniform01,
    Normal01,
}

#[derive(Debug, Clone)]
enum PotentialMode {
    Analytic(Vec<AnalyticMarginal>),
    Empirical(PointSet),
}

/// The potential (kernel embedding) of a target measure.
#[derive(Debug, Clone)]
pub struct Potential {
    kernel: KernelSpec,
    mode: PotentialMode,
}

impl Potential {
    /// Analytic potential; requires a tensor-product Matern-5/2 kernel and a
    /// target whose marginals are all uniform on `[0,1]` or standard normal.
    pub fn analytic(kernel: &KernelSpec, mu: &TargetMeasure) -> Result<Self, DiscrepancyError> {
        if kernel.family != KernelFamily::Matern52 || kernel.form != KernelForm::TensorProduct {
            return Err(DiscrepancyError::Unsupported(
                "analytic potentials require a tensor-product Matern-5/2 kernel".into(),
            ));
        }
        if mu.dim() != kernel.dim() {
            return Err(DiscrepancyError::DimensionMismatch {
                expected: kernel.dim(),
                got: mu.dim(),
            });
        }
        let marginals = match mu {
            TargetMeasure::UnitCubeUniform(d) => {
                alloc::vec![AnalyticMarginal::Uniform01; *d]
            }
            TargetMeasure::ProductMarginals(ms) => ms
                .iter()
                .map(|m| match m {
                    Marginal::Uniform { a, b } if *a == 0.0 && *b == 1.0 => {
                        Ok(AnalyticMarginal::Uniform01)
                    }
                    Marginal::Normal { mean, sd } if *mean == 0.0 && *sd == 1.0 => {
                        Ok(AnalyticMarginal::Normal01)
                    }
                    other => Err(DiscrepancyError::Unsupported(alloc::format!(
                        "no analytic potential for marginal {other:?}"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()?,
            TargetMeasure::Empirical { .. } => {
                return Err(DiscrepancyError::Unsupported(
                    "analytic potential undefined for empirical measures".into(),
                ))
            }
        };
        Ok(Potential { kernel: kernel.clone(), mode: PotentialMode::Analytic(marginals) })
    }

    /// Empirical potential over the atoms of a quadrature sample.
    pub fn empirical(kernel: &KernelSpec, sample: PointSet) -> Result<Self, DiscrepancyError> {
        if sample.dim() != kernel.dim() {
            return Err(DiscrepancyError::DimensionMismatch {
                expected: kernel.dim(),
                got: sample.dim(),
            });
        }
        if sample.is_empty() {
            return Err(DiscrepancyError::Unsupported("empty quadrature sample".into()));
        }
        Ok(Potential { kernel: kernel.clone(), mode: PotentialMode::Empirical(sample) })
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    /// Quadrature sample backing an empirical potential, if any.
    pub fn sample(&self) -> Option<&PointSet> {
        match &self.mode {
            PotentialMode::Empirical(s) => Some(s),
            PotentialMode::Analytic(_) => None,
        }
    }

    /// Potential value at a point.
    pub fn eval(&self, x: &[f64]) -> Result<f64, DiscrepancyError> {
        if x.len() != self.dim() {
            return Err(DiscrepancyError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        match &self.mode {
            PotentialMode::Analytic(marginals) => {
                let mut prod = self.kernel.scale;
                for ((&xi, m), &theta) in x.iter().zip(marginals).zip(&self.kernel.lengthscales) {
                    prod *= match m {
                        AnalyticMarginal::Uniform01 => potential_uniform_matern52(xi, theta)?,
                        AnalyticMarginal::Normal01 => potential_normal_matern52(xi, theta)?,
                    };
                }
                Ok(prod)
            }
            PotentialMode::Empirical(sample) => {
                let mut s = 0.0;
                for r in sample.rows() {
                    s += self.kernel.eval(x, r);
                }
                Ok(s / sample.len() as f64)
            }
        }
    }

    /// The double integral of the kernel against the target measure.
    ///
    /// Empirical measures integrate exactly over their atoms; analytic
    /// measures require a quadrature sample (points already distributed
    /// according to the target), averaging the analytic potential over it.
    pub fn energy_constant(&self, quad: Option<&PointSet>) -> Result<f64, DiscrepancyError> {
        match &self.mode {
            PotentialMode::Empirical(sample) => {
                let mut s = 0.0;
                for r in sample.rows() {
                    s += self.eval(r)?;
                }
                Ok(s / sample.len() as f64)
            }
            PotentialMode::Analytic(_) => {
                let quad = quad.ok_or(DiscrepancyError::MissingQuadrature)?;
                let mut s = 0.0;
                for r in quad.rows() {
                    s += self.eval(r)?;
                }
                Ok(s / quad.len() as f64)
            }
        }
    }
}

/// Whether the MMD energy constant of the target is included.
///
/// `Relative` omits it; differences of relative values across candidate
/// measures are exact, which suffices for all minimizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyConstantMode {
    Absolute,
    Relative,
}

/// Squared MMD between the weighted point set and the potential's target.
///
/// `weights` defaults to uniform; in `Absolute` mode the result is the full
/// squared discrepancy, nonnegative for positive-definite kernels.
pub fn mmd_squared(
    points: &PointSet,
    weights: Option<&[f64]>,
    target: &Potential,
    mode: EnergyConstantMode,
    quad: Option<&PointSet>,
) -> Result<f64, DiscrepancyError> {
    if points.dim() != target.dim() {
        return Err(DiscrepancyError::DimensionMismatch {
            expected: target.dim(),
            got: points.dim(),
        });
    }
    let n = points.len();
    let uniform;
    let w: &[f64] = match weights {
        Some(w) => {
            if w.len() != n {
                return Err(DiscrepancyError::BadWeights(alloc::format!(
                    "{} weights for {} points",
                    w.len(),
                    n
                )));
            }
            w
        }
        None => {
            uniform = alloc::vec![1.0 / n as f64; n];
            &uniform
        }
    };

    let kernel = target.kernel();
    let mut quad_form = 0.0;
    for i in 0..n {
        quad_form += w[i] * w[i] * kernel.eval(points.row(i), points.row(i));
        for j in i + 1..n {
            quad_form += 2.0 * w[i] * w[j] * kernel.eval(points.row(i), points.row(j));
        }
    }
    let mut cross = 0.0;
    for i in 0..n {
        cross += w[i] * target.eval(points.row(i))?;
    }
    let base = quad_form - 2.0 * cross;
    match mode {
        EnergyConstantMode::Relative => Ok(base),
        EnergyConstantMode::Absolute => Ok(base + target.energy_constant(quad)?),
    }
}
