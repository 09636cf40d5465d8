//! Independent quadrature oracles for the closed-form Matern-5/2 potentials.
//!
//! The uniform-measure potential is checked against high-order
//! Gauss-Legendre quadrature on [0,1]; the normal-measure potential against
//! adaptive Simpson quadrature on [-10, 10]. Both oracles are computed here
//! from scratch, independent of the library's formulas.

use tessel_core::kernels::{matern_1d, KernelFamily};
use tessel_core::rng::Rng;
use tessel_core::{discrepancy, special};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Chebyshev-based initial guess
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and its derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Oracle: integral of the 1-d Matern-5/2 kernel against the uniform measure
/// on [0,1].
fn uniform_potential_quadrature(x: f64, theta: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let mut s = 0.0;
    for (t, w) in nodes.iter().zip(weights) {
        // map [-1,1] -> [0,1]
        let u = 0.5 * (t + 1.0);
        s += 0.5 * w * matern_1d(KernelFamily::Matern52, theta, x - u);
    }
    s
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let whole = simpson(f, a, b);
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        adaptive_simpson(f, a, m, 0.5 * tol, depth - 1)
            + adaptive_simpson(f, m, b, 0.5 * tol, depth - 1)
    }
}

/// Oracle: integral of the 1-d Matern-5/2 kernel against the standard normal
/// density, truncated to [-10, 10].
fn normal_potential_quadrature(x: f64, theta: f64) -> f64 {
    let f = |t: f64| matern_1d(KernelFamily::Matern52, theta, x - t) * special::norm_pdf(t);
    // Fixed panels keep narrow kernels (small theta) from slipping between
    // the samples of a single wide Simpson interval.
    let panels = 200;
    let width = 20.0 / panels as f64;
    (0..panels)
        .map(|k| {
            let a = -10.0 + k as f64 * width;
            adaptive_simpson(&f, a, a + width, 1e-14, 30)
        })
        .sum()
}

#[test]
fn uniform_potential_matches_gauss_legendre_at_spec_points() {
    let (nodes, weights) = gauss_legendre(4096);
    for &x in &[0.5, 0.0] {
        let want = uniform_potential_quadrature(x, 0.2, &nodes, &weights);
        let got = discrepancy::potential_uniform_matern52(x, 0.2).unwrap();
        assert!((got - want).abs() < 1e-10, "x={x}: {got} vs {want}");
    }
}

#[test]
fn normal_potential_matches_adaptive_quadrature_at_spec_points() {
    for &x in &[0.0, 3.0] {
        let want = normal_potential_quadrature(x, 0.7);
        let got = discrepancy::potential_normal_matern52(x, 0.7).unwrap();
        assert!((got - want).abs() < 1e-8, "x={x}: {got} vs {want}");
    }
}

#[test]
fn potentials_match_quadrature_on_random_pairs() {
    let (nodes, weights) = gauss_legendre(4096);
    let mut rng = Rng::new(20260824);
    for i in 0..100 {
        let theta = 0.05 + 1.95 * rng.next_f64();

        let xu = rng.next_f64();
        let want = uniform_potential_quadrature(xu, theta, &nodes, &weights);
        let got = discrepancy::potential_uniform_matern52(xu, theta).unwrap();
        assert!(
            (got - want).abs() < 1e-8,
            "uniform case {i}: x={xu}, theta={theta}: {got} vs {want}"
        );

        let xn = 6.0 * rng.next_f64() - 3.0;
        let want = normal_potential_quadrature(xn, theta);
        let got = discrepancy::potential_normal_matern52(xn, theta).unwrap();
        assert!(
            (got - want).abs() < 1e-8,
            "normal case {i}: x={xn}, theta={theta}: {got} vs {want}"
        );
    }
}
