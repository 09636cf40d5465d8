//! Positive-definite and conditionally positive-definite kernels, including
//! kernels conditioned on a training design.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, fabs, sqrt};

use crate::linalg::Cholesky;
use crate::measures::{dist, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    Matern12,
    Matern32,
    Matern52,
    /// Szekely-Rizzo energy-distance kernel; conditionally positive definite
    /// only.
    EnergyDistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelForm {
    /// Product of one-dimensional kernels, one lengthscale per dimension.
    TensorProduct,
    /// One-dimensional formula applied to the scaled Euclidean distance
    /// `[(x-x')^T D (x-x')]^{1/2}` with `D = diag(1/theta_i^2)`.
    AnisotropicDistance,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelError {
    InvalidSpec(String),
    DimensionMismatch { expected: usize, got: usize },
    NotPositiveDefinite(String),
    DegenerateDesign { row_a: usize, row_b: usize },
}

impl core::fmt::Display for KernelError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            KernelError::InvalidSpec(s) => write!(f, "invalid kernel spec: {s}"),
            KernelError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            KernelError::NotPositiveDefinite(s) => write!(f, "kernel not positive definite: {s}"),
            KernelError::DegenerateDesign { row_a, row_b } => {
                write!(f, "degenerate design: rows {row_a} and {row_b} coincide")
            }
        }
    }
}

/// One-dimensional Matern correlation at lag `r >= 0` with lengthscale `theta`.
pub fn matern_1d(family: KernelFamily, theta: f64, r: f64) -> f64 {
    let r = fabs(r);
    match family {
        KernelFamily::Matern12 => exp(-r / theta),
        KernelFamily::Matern32 => {
            let z = sqrt(3.0) * r / theta;
            (1.0 + z) * exp(-z)
        }
        KernelFamily::Matern52 => {
            let z = sqrt(5.0) * r / theta;
            (1.0 + z + z * z / 3.0) * exp(-z)
        }
        KernelFamily::EnergyDistance => panic!("energy-distance kernel has no 1-d correlation"),
    }
}

/// A kernel family with its form, per-dimension lengthscales and scale.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub form: KernelForm,
    pub lengthscales: Vec<f64>,
    pub scale: f64,
}

impl KernelSpec {
    pub fn matern52_tensor(lengthscales: Vec<f64>) -> Self {
        KernelSpec {
            family: KernelFamily::Matern52,
            form: KernelForm::TensorProduct,
            lengthscales,
            scale: 1.0,
        }
    }

    pub fn matern52_aniso(lengthscales: Vec<f64>) -> Self {
        KernelSpec {
            family: KernelFamily::Matern52,
            form: KernelForm::AnisotropicDistance,
            lengthscales,
            scale: 1.0,
        }
    }

    pub fn energy_distance(dim: usize) -> Self {
        KernelSpec {
            family: KernelFamily::EnergyDistance,
            form: KernelForm::AnisotropicDistance,
            lengthscales: vec![1.0; dim],
            scale: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.lengthscales.len()
    }

    pub fn is_positive_definite(&self) -> bool {
        !matches!(self.family, KernelFamily::EnergyDistance)
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        if self.lengthscales.is_empty() {
            return Err(KernelError::InvalidSpec("no lengthscales given".into()));
        }
        if self.lengthscales.iter().any(|&t| !(t > 0.0)) {
            return Err(KernelError::InvalidSpec("lengthscales must be positive".into()));
        }
        if !(self.scale > 0.0) {
            return Err(KernelError::InvalidSpec("scale must be positive".into()));
        }
        if self.family == KernelFamily::EnergyDistance {
            if self.form != KernelForm::AnisotropicDistance {
                return Err(KernelError::InvalidSpec(
                    "energy-distance kernel admits the anisotropic-distance form only".into(),
                ));
            }
            if self.lengthscales.iter().any(|&t| t != 1.0) {
                return Err(KernelError::InvalidSpec(
                    "energy-distance kernel requires unit lengthscales".into(),
                ));
            }
        }
        Ok(())
    }

    /// Kernel value at a pair of points.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        match self.family {
            KernelFamily::EnergyDistance => {
                let nx = sqrt(x.iter().map(|v| v * v).sum::<f64>());
                let ny = sqrt(y.iter().map(|v| v * v).sum::<f64>());
                self.scale * 0.5 * (nx + ny - dist(x, y))
            }
            family => match self.form {
                KernelForm::TensorProduct => {
                    let mut prod = self.scale;
                    for ((&a, &b), &t) in x.iter().zip(y).zip(&self.lengthscales) {
                        prod *= matern_1d(family, t, a - b);
                    }
                    prod
                }
                KernelForm::AnisotropicDistance => {
                    let mut s = 0.0;
                    for ((&a, &b), &t) in x.iter().zip(y).zip(&self.lengthscales) {
                        let z = (a - b) / t;
                        s += z * z;
                    }
                    self.scale * matern_1d(family, 1.0, sqrt(s))
                }
            },
        }
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<(), KernelError> {
        if x.len() != self.dim() {
            return Err(KernelError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }
}

/// Checked kernel evaluation.
pub fn eval_kernel(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64, KernelError> {
    spec.validate()?;
    spec.check_dim(x)?;
    spec.check_dim(y)?;
    Ok(spec.eval(x, y))
}

/// Cross Gram matrix over `A x B`, row-major `|A| x |B|`.
///
/// When `A` and `B` are the same set, each unordered pair is evaluated once
/// so the result is symmetric to the last bit.
pub fn gram(spec: &KernelSpec, a: &PointSet, b: &PointSet) -> Result<Vec<f64>, KernelError> {
    spec.validate()?;
    if a.dim() != spec.dim() || b.dim() != spec.dim() {
        return Err(KernelError::DimensionMismatch { expected: spec.dim(), got: a.dim() });
    }
    let (na, nb) = (a.len(), b.len());
    let mut g = vec![0.0; na * nb];
    if core::ptr::eq(a, b) || (na == nb && a == b) {
        for i in 0..na {
            for j in i..nb {
                let v = spec.eval(a.row(i), b.row(j));
                g[i * nb + j] = v;
                g[j * nb + i] = v;
            }
        }
    } else {
        for i in 0..na {
            for j in 0..nb {
                g[i * nb + j] = spec.eval(a.row(i), b.row(j));
            }
        }
    }
    Ok(g)
}

/// Precomputed whitened cross-covariances `L^{-1} k_m(x)` for a batch of
/// points, enabling O(m) conditioned-kernel evaluations between batches.
#[derive(Debug, Clone)]
pub struct Whitened {
    /// Row `i` holds `L^{-1} k_m(x_i)`; `len = points * m`.
    w: Vec<f64>,
    m: usize,
}

impl Whitened {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.w[i * self.m..(i + 1) * self.m]
    }
}

/// A base kernel conditioned on a training design: the Gaussian-process
/// posterior covariance after observing the design exactly.
#[derive(Debug, Clone)]
pub struct ConditionedKernel {
    spec: KernelSpec,
    x_m: PointSet,
    chol: Option<Cholesky>,
}

impl ConditionedKernel {
    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn training_design(&self) -> &PointSet {
        &self.x_m
    }

    pub fn training_size(&self) -> usize {
        self.x_m.len()
    }

    /// Jitter added to the training Gram matrix.
    pub fn jitter(&self) -> f64 {
        self.chol.as_ref().map_or(0.0, |c| c.jitter())
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// `k_m(x)`: base-kernel covariances against the training design.
    pub fn k_vec(&self, x: &[f64]) -> Vec<f64> {
        self.x_m.rows().map(|r| self.spec.eval(x, r)).collect()
    }

    /// Whitened cross-covariances for a batch of points.
    pub fn whiten(&self, pts: &PointSet) -> Whitened {
        let m = self.x_m.len();
        match &self.chol {
            None => Whitened { w: Vec::new(), m: 0 },
            Some(ch) => {
                let mut w = Vec::with_capacity(pts.len() * m);
                for p in pts.rows() {
                    w.extend_from_slice(&ch.solve_lower(&self.k_vec(p)));
                }
                Whitened { w, m }
            }
        }
    }

    /// Conditioned covariance between two batch points given their whitened
    /// cross-covariances.
    pub fn cond_from_whitened(&self, x: &[f64], wx: &[f64], y: &[f64], wy: &[f64]) -> f64 {
        let mut s = self.spec.eval(x, y);
        for (a, b) in wx.iter().zip(wy) {
            s -= a * b;
        }
        s
    }

    /// `K_{|m}(x, y) = K(x,y) - k_m(x)^T K_m^{-1} k_m(y)`.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        match &self.chol {
            None => self.spec.eval(x, y),
            Some(ch) => {
                let wx = ch.solve_lower(&self.k_vec(x));
                let wy = ch.solve_lower(&self.k_vec(y));
                self.cond_from_whitened(x, &wx, y, &wy)
            }
        }
    }

    /// Solves `K_m a = b` against the training Gram matrix.
    pub fn solve_training(&self, b: &[f64]) -> Vec<f64> {
        match &self.chol {
            None => Vec::new(),
            Some(ch) => ch.solve(b),
        }
    }
}

/// Conditions a positive-definite kernel on a training design.
///
/// The training Gram matrix is factorized with the escalating-jitter policy
/// of [`Cholesky::new_with_jitter`].
pub fn condition(spec: &KernelSpec, x_m: &PointSet) -> Result<ConditionedKernel, KernelError> {
    spec.validate()?;
    if !spec.is_positive_definite() {
        return Err(KernelError::NotPositiveDefinite(
            "the energy-distance kernel cannot be conditioned".into(),
        ));
    }
    if x_m.len() > 0 && x_m.dim() != spec.dim() {
        return Err(KernelError::DimensionMismatch { expected: spec.dim(), got: x_m.dim() });
    }
    for i in 0..x_m.len() {
        for j in i + 1..x_m.len() {
            if dist(x_m.row(i), x_m.row(j)) == 0.0 {
                return Err(KernelError::DegenerateDesign { row_a: i, row_b: j });
            }
        }
    }
    let chol = if x_m.len() == 0 {
        None
    } else {
        let g = gram(spec, x_m, x_m)?;
        Some(
            Cholesky::new_with_jitter(&g, x_m.len())
                .map_err(|e| KernelError::NotPositiveDefinite(format!("{e}")))?,
        )
    };
    Ok(ConditionedKernel { spec: spec.clone(), x_m: x_m.clone(), chol })
}

/// Fourth-moment kernel value assembled from conditioned-covariance values
/// and the error-mean values at the two points.
///
/// With zero means this is `2 K^2(x,y) + K(x,x) K(y,y)`; with nonzero means
/// it is the general (non-interpolating) form.
#[inline]
pub fn kbar_value(kxx: f64, kyy: f64, kxy: f64, dx: f64, dy: f64) -> f64 {
    2.0 * (kxy + 2.0 * dx * dy) * kxy + (dx * dx + kxx) * (dy * dy + kyy)
}

/// The fourth-moment kernel governing the variance of squared-residual
/// averages under the conditioned Gaussian error model.
pub struct FourthMomentKernel<'a> {
    ck: &'a ConditionedKernel,
    mean: Option<Box<dyn Fn(&[f64]) -> f64 + 'a>>,
}

impl<'a> FourthMomentKernel<'a> {
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        let kxy = self.ck.eval(x, y);
        let kxx = self.ck.eval(x, x);
        let kyy = self.ck.eval(y, y);
        let (dx, dy) = match &self.mean {
            None => (0.0, 0.0),
            Some(g) => (g(x), g(y)),
        };
        kbar_value(kxx, kyy, kxy, dx, dy)
    }
}

/// Fourth-moment kernel with error mean `delta_hat` (pass `None` when the
/// predictor interpolates the training data).
pub fn kbar<'a>(
    ck: &'a ConditionedKernel,
    delta_hat: Option<Box<dyn Fn(&[f64]) -> f64 + 'a>>,
) -> FourthMomentKernel<'a> {
    FourthMomentKernel { ck, mean: delta_hat }
}

/// Denominator-weighting variant: the error mean is the centred predictor
/// `x -> eta_m(x) - y_bar_m`.
pub fn kbar_prime<'a>(
    ck: &'a ConditionedKernel,
    predictor: Box<dyn Fn(&[f64]) -> f64 + 'a>,
    y_bar_m: f64,
) -> FourthMomentKernel<'a> {
    FourthMomentKernel { ck, mean: Some(Box::new(move |x: &[f64]| predictor(x) - y_bar_m)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::sobol_sequence;

    #[test]
    fn zero_lag_equals_scale() {
        let mut spec = KernelSpec::matern52_tensor(vec![0.3, 0.7]);
        spec.scale = 2.5;
        let x = [0.2, 0.9];
        assert_eq!(spec.eval(&x, &x), 2.5);
    }

    #[test]
    fn matern52_unit_distance_value() {
        let spec = KernelSpec::matern52_tensor(vec![1.0]);
        let v = spec.eval(&[0.0], &[1.0]);
        assert!(fabs(v - 0.523994) < 1e-5);
        let closed = (1.0 + sqrt(5.0) + 5.0 / 3.0) * exp(-sqrt(5.0));
        assert!(fabs(v - closed) < 1e-15);
    }

    #[test]
    fn tensor_and_aniso_agree_in_one_dimension() {
        let t = KernelSpec::matern52_tensor(vec![0.4]);
        let a = KernelSpec::matern52_aniso(vec![0.4]);
        for i in 0..20 {
            let x = [i as f64 * 0.1];
            assert!(fabs(t.eval(&[0.0], &x) - a.eval(&[0.0], &x)) < 1e-15);
        }
    }

    #[test]
    fn energy_kernel_identities() {
        let spec = KernelSpec::energy_distance(3);
        let x = [1.0, 2.0, -2.0];
        let norm = 3.0;
        assert!(fabs(spec.eval(&x, &x) - norm) < 1e-12);
        assert!(fabs(spec.eval(&[0.0; 3], &x)) < 1e-12);
    }

    #[test]
    fn energy_kernel_rejects_tensor_form() {
        let mut spec = KernelSpec::energy_distance(2);
        spec.form = KernelForm::TensorProduct;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn gram_is_bit_symmetric_and_scalar_consistent() {
        let spec = KernelSpec::matern52_tensor(vec![0.2, 0.2]);
        let pts = sobol_sequence(2, 15, 3).unwrap();
        let g = gram(&spec, &pts, &pts).unwrap();
        for i in 0..15 {
            for j in 0..15 {
                assert_eq!(g[i * 15 + j], g[j * 15 + i]);
            }
        }
        let single = PointSet::from_rows(&[pts.row(4)], 2).unwrap();
        let g1 = gram(&spec, &single, &single).unwrap();
        assert_eq!(g1[0], spec.eval(pts.row(4), pts.row(4)));
    }

    #[test]
    fn gram_positive_definite_on_distinct_points() {
        let spec = KernelSpec::matern52_tensor(vec![0.3, 0.3]);
        let pts = sobol_sequence(2, 20, 1).unwrap();
        let g = gram(&spec, &pts, &pts).unwrap();
        let ch = Cholesky::new(&g, 20).unwrap();
        assert_eq!(ch.jitter(), 0.0);
    }

    #[test]
    fn conditioning_nullifies_variance_at_training_points() {
        let spec = KernelSpec::matern52_tensor(vec![0.4, 0.4]);
        let x_m = sobol_sequence(2, 8, 1).unwrap();
        let ck = condition(&spec, &x_m).unwrap();
        for r in x_m.rows() {
            assert!(fabs(ck.eval(r, r)) <= 10.0 * ck.jitter().max(1e-12));
        }
    }

    #[test]
    fn empty_training_set_reduces_to_base_kernel() {
        let spec = KernelSpec::matern52_tensor(vec![0.4]);
        let ck = condition(&spec, &PointSet::empty(1)).unwrap();
        assert_eq!(ck.eval(&[0.2], &[0.7]), spec.eval(&[0.2], &[0.7]));
    }

    #[test]
    fn conditioning_reduces_variance_off_design() {
        let spec = KernelSpec::matern52_tensor(vec![0.5, 0.5]);
        let x_m = sobol_sequence(2, 6, 1).unwrap();
        let ck = condition(&spec, &x_m).unwrap();
        let queries = sobol_sequence(2, 5, 100).unwrap();
        for q in queries.rows() {
            assert!(ck.eval(q, q) <= spec.eval(q, q) + 1e-12);
        }
    }

    #[test]
    fn condition_rejects_energy_and_duplicates() {
        let e = KernelSpec::energy_distance(2);
        let pts = sobol_sequence(2, 4, 1).unwrap();
        assert!(matches!(condition(&e, &pts), Err(KernelError::NotPositiveDefinite(_))));

        let spec = KernelSpec::matern52_tensor(vec![0.4, 0.4]);
        let dup = PointSet::new(vec![0.1, 0.2, 0.1, 0.2], 2).unwrap();
        assert!(matches!(condition(&spec, &dup), Err(KernelError::DegenerateDesign { .. })));
    }

    #[test]
    fn kbar_interpolating_identities() {
        let spec = KernelSpec::matern52_tensor(vec![0.4, 0.4]);
        let x_m = sobol_sequence(2, 5, 1).unwrap();
        let ck = condition(&spec, &x_m).unwrap();
        let kb = kbar(&ck, None);
        let x = [0.33, 0.71];
        let y = [0.62, 0.18];
        let kxx = ck.eval(&x, &x);
        let kyy = ck.eval(&y, &y);
        let kxy = ck.eval(&x, &y);
        assert!(fabs(kb.eval(&x, &x) - 3.0 * kxx * kxx) < 1e-14);
        assert!(fabs(kb.eval(&x, &y) - (2.0 * kxy * kxy + kxx * kyy)) < 1e-14);
    }

    #[test]
    fn kbar_prime_reduces_to_kbar_for_constant_predictor() {
        let spec = KernelSpec::matern52_tensor(vec![0.4, 0.4]);
        let x_m = sobol_sequence(2, 5, 1).unwrap();
        let ck = condition(&spec, &x_m).unwrap();
        let kb = kbar(&ck, None);
        let kbp = kbar_prime(&ck, Box::new(|_: &[f64]| 1.7), 1.7);
        let x = [0.33, 0.71];
        let y = [0.62, 0.18];
        assert!(fabs(kb.eval(&x, &y) - kbp.eval(&x, &y)) < 1e-14);
        assert!(fabs(kbp.eval(&x, &y) - kbp.eval(&y, &x)) < 1e-14);
    }
}
