//! Dense symmetric positive-definite factorization and triangular solves.
//!
//! Matrices are `Vec<f64>` in row-major order. Sizes stay in the hundreds
//! throughout the crate, so a plain Cholesky without blocking is adequate.

use alloc::vec;
use alloc::vec::Vec;
use libm::{log, sqrt};

/// Factorization failed even after the jitter ladder was exhausted.
#[derive(Debug, Clone, PartialEq)]
pub struct NotPositiveDefinite {
    pub size: usize,
    pub max_jitter_tried: f64,
}

impl core::fmt::Display for NotPositiveDefinite {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "matrix of size {} is not positive definite (max jitter tried: {:e})",
            self.size, self.max_jitter_tried
        )
    }
}

/// Lower-triangular Cholesky factor of `A + jitter * I`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
    jitter: f64,
}

fn try_factor(a: &[f64], n: usize, jitter: f64) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            if i == j {
                s += jitter;
            }
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[i * n + i] = sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

impl Cholesky {
    /// Factors `A` with no jitter.
    pub fn new(a: &[f64], n: usize) -> Result<Self, NotPositiveDefinite> {
        assert_eq!(a.len(), n * n);
        match try_factor(a, n, 0.0) {
            Some(l) => Ok(Cholesky { n, l, jitter: 0.0 }),
            None => Err(NotPositiveDefinite { size: n, max_jitter_tried: 0.0 }),
        }
    }

    /// Factors `A + jitter * I`, escalating the jitter from zero through
    /// `{1e-12, 1e-10, 1e-8, 1e-6} * trace(A)/n` until the factorization
    /// succeeds.
    pub fn new_with_jitter(a: &[f64], n: usize) -> Result<Self, NotPositiveDefinite> {
        assert_eq!(a.len(), n * n);
        if n == 0 {
            return Ok(Cholesky { n, l: Vec::new(), jitter: 0.0 });
        }
        let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
        let t = trace / n as f64;
        let mut last = 0.0;
        for &scale in &[0.0, 1e-12, 1e-10, 1e-8, 1e-6] {
            let jitter = scale * t;
            last = jitter;
            if let Some(l) = try_factor(a, n, jitter) {
                return Ok(Cholesky { n, l, jitter });
            }
        }
        Err(NotPositiveDefinite { size: n, max_jitter_tried: last })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Jitter actually added to the diagonal.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Solves `(A + jitter I) x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = self.solve_lower(b);
        // L^T x = y
        for i in (0..self.n).rev() {
            let mut s = x[i];
            for k in i + 1..self.n {
                s -= self.l[k * self.n + i] * x[k];
            }
            x[i] = s / self.l[i * self.n + i];
        }
        x
    }

    /// Solves `L y = b` (forward substitution).
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l[i * self.n + k] * y[k];
            }
            y[i] = s / self.l[i * self.n + i];
        }
        y
    }

    /// Solves `L Y = B` column by column; `B` is `n x cols`, row-major.
    pub fn solve_lower_multi(&self, b: &[f64], cols: usize) -> Vec<f64> {
        assert_eq!(b.len(), self.n * cols);
        let mut y = vec![0.0; self.n * cols];
        for i in 0..self.n {
            let (head, tail) = y.split_at_mut(i * cols);
            let row = &mut tail[..cols];
            row.copy_from_slice(&b[i * cols..(i + 1) * cols]);
            for k in 0..i {
                let lik = self.l[i * self.n + k];
                if lik != 0.0 {
                    let yk = &head[k * cols..(k + 1) * cols];
                    for c in 0..cols {
                        row[c] -= lik * yk[c];
                    }
                }
            }
            let d = self.l[i * self.n + i];
            for v in row.iter_mut() {
                *v /= d;
            }
        }
        y
    }

    /// `log det(A + jitter I)`.
    pub fn log_det(&self) -> f64 {
        (0..self.n).map(|i| 2.0 * log(self.l[i * self.n + i])).sum()
    }
}

/// Residual `max_i |A x - b|_i` for a symmetric system, used as a solver
/// quality diagnostic.
pub fn residual_inf_norm(a: &[f64], n: usize, x: &[f64], b: &[f64]) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..n {
        let mut s = -b[i];
        for j in 0..n {
            s += a[i * n + j] * x[j];
        }
        worst = worst.max(s.abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn spd_example(n: usize) -> Vec<f64> {
        // A = B^T B + I with a fixed pseudo-random B.
        let mut rng = crate::rng::Rng::new(99);
        let b: Vec<f64> = (0..n * n).map(|_| rng.next_f64() - 0.5).collect();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = if i == j { 1.0 } else { 0.0 };
                for k in 0..n {
                    s += b[k * n + i] * b[k * n + j];
                }
                a[i * n + j] = s;
            }
        }
        a
    }

    #[test]
    fn solve_reproduces_rhs() {
        let n = 12;
        let a = spd_example(n);
        let b: Vec<f64> = (0..n).map(|i| i as f64 - 3.0).collect();
        let ch = Cholesky::new(&a, n).unwrap();
        let x = ch.solve(&b);
        assert!(residual_inf_norm(&a, n, &x, &b) < 1e-10);
    }

    #[test]
    fn jitter_rescues_semidefinite_matrix() {
        // Rank-1 matrix; exact factorization fails past the first pivot.
        let n = 3;
        let v = [1.0, 2.0, 3.0];
        let mut a = vec![0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                a[i * 3 + j] = v[i] * v[j];
            }
        }
        assert!(Cholesky::new(&a, n).is_err());
        let ch = Cholesky::new_with_jitter(&a, n).unwrap();
        assert!(ch.jitter() > 0.0);
    }

    #[test]
    fn log_det_matches_two_by_two() {
        let a = vec![4.0, 1.0, 1.0, 3.0];
        let ch = Cholesky::new(&a, 2).unwrap();
        assert!((ch.log_det() - libm::log(11.0)).abs() < 1e-12);
    }

    #[test]
    fn multi_solve_matches_single() {
        let n = 8;
        let a = spd_example(n);
        let ch = Cholesky::new(&a, n).unwrap();
        let cols = 3;
        let mut b = vec![0.0; n * cols];
        for i in 0..n {
            for c in 0..cols {
                b[i * cols + c] = (i * cols + c) as f64 * 0.1 - 1.0;
            }
        }
        let y = ch.solve_lower_multi(&b, cols);
        for c in 0..cols {
            let bc: Vec<f64> = (0..n).map(|i| b[i * cols + c]).collect();
            let yc = ch.solve_lower(&bc);
            for i in 0..n {
                assert!((y[i * cols + c] - yc[i]).abs() < 1e-12);
            }
        }
    }
}
