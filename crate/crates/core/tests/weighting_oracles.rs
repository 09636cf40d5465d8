//! Statistical and algebraic oracles for the fourth-moment weighting scheme:
//! positive definiteness of the assembled Gram matrices, optimality of the
//! solved weights, the Gaussian moment identity the derivation rests on, and
//! a Monte-Carlo validation of the predicted ISE-estimation error.

use tessel_core::kernels::{condition, gram, kbar_value, ConditionedKernel, KernelSpec};
use tessel_core::linalg::Cholesky;
use tessel_core::measures::{dist, PointSet};
use tessel_core::rng::Rng;
use tessel_core::weighting::{
    delta_bar_sq, kbar_mmd_sq, optimal_weights, ErrorInterpolant, WeightedTestSet,
};

fn random_points(rng: &mut Rng, n: usize, d: usize) -> PointSet {
    let data: Vec<f64> = (0..n * d).map(|_| rng.next_f64()).collect();
    PointSet::new(data, d).unwrap()
}

/// Random training/test split with all pairwise distances bounded away from
/// zero so the configuration is well posed.
fn disjoint_draw(rng: &mut Rng, m: usize, n: usize, d: usize) -> (PointSet, PointSet) {
    loop {
        let x_m = random_points(rng, m, d);
        let x_n = random_points(rng, n, d);
        let all = x_m.concat(&x_n).unwrap();
        let mut ok = true;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if dist(all.row(i), all.row(j)) < 1e-3 {
                    ok = false;
                }
            }
        }
        if ok {
            return (x_m, x_n);
        }
    }
}

fn kbar_trace(ck: &ConditionedKernel, x_n: &PointSet) -> f64 {
    x_n.rows()
        .map(|r| {
            let k = ck.eval(r, r);
            kbar_value(k, k, k, 0.0, 0.0)
        })
        .sum()
}

#[test]
fn kbar_positive_definite_across_fifty_draws() {
    let mut rng = Rng::new(501);
    let spec = KernelSpec::matern52_tensor(vec![0.3, 0.3]);
    for draw in 0..50 {
        let (x_m, x_n) = disjoint_draw(&mut rng, 5, 8, 2);
        let ck = condition(&spec, &x_m).unwrap();
        let mu = random_points(&mut rng, 32, 2);
        let wts = optimal_weights(&ck, &x_n, &mu, None).unwrap();
        let bound = 1e-8 * kbar_trace(&ck, &x_n) / x_n.len() as f64;
        assert!(
            wts.jitter <= bound + f64::EPSILON,
            "draw {draw}: jitter {} exceeds {bound}",
            wts.jitter
        );
    }
}

#[test]
fn weights_are_a_minimum_under_perturbation() {
    let mut rng = Rng::new(77);
    let spec = KernelSpec::matern52_tensor(vec![0.35, 0.35]);
    let (x_m, x_n) = disjoint_draw(&mut rng, 6, 7, 2);
    let ck = condition(&spec, &x_m).unwrap();
    let mu = random_points(&mut rng, 64, 2);
    let star = optimal_weights(&ck, &x_n, &mu, None).unwrap();
    let base = kbar_mmd_sq(&ck, &star, &mu, None).unwrap();
    for _ in 0..20 {
        let dir: Vec<f64> = (0..x_n.len()).map(|_| rng.next_standard_normal()).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        for sign in [1.0, -1.0] {
            let mut p = star.clone();
            for (w, g) in p.weights.iter_mut().zip(&dir) {
                *w += sign * 1e-3 * g / norm;
            }
            let perturbed = kbar_mmd_sq(&ck, &p, &mu, None).unwrap();
            assert!(
                perturbed >= base - 1e-12,
                "perturbed {perturbed} below optimum {base}"
            );
        }
    }
}

#[test]
fn optimal_weights_never_worse_than_uniform_on_random_configurations() {
    let mut rng = Rng::new(909);
    let spec = KernelSpec::matern52_tensor(vec![0.4, 0.4]);
    for draw in 0..20 {
        let (x_m, x_n) = disjoint_draw(&mut rng, 4, 6, 2);
        let ck = condition(&spec, &x_m).unwrap();
        let mu = random_points(&mut rng, 48, 2);
        let star = optimal_weights(&ck, &x_n, &mu, None).unwrap();
        let d_star = kbar_mmd_sq(&ck, &star, &mu, None).unwrap();
        let d_unif = kbar_mmd_sq(&ck, &WeightedTestSet::uniform(x_n), &mu, None).unwrap();
        assert!(d_star <= d_unif + 1e-10, "draw {draw}: {d_star} vs {d_unif}");
    }
}

#[test]
fn gaussian_moment_identity_holds_empirically() {
    // E[U^2 V^2] = 2 (E[UV])^2 + E[U^2] E[V^2] for centred jointly normal
    // U, V; checked on 10^6 correlated draws.
    let mut rng = Rng::new(424242);
    let (su, sv, rho) = (1.3, 0.8, 0.6);
    let n = 1_000_000usize;
    let mut m_uv = 0.0;
    let mut m_u2 = 0.0;
    let mut m_v2 = 0.0;
    let mut m_u2v2 = 0.0;
    let mut m_u4v4 = 0.0;
    for _ in 0..n {
        let a = rng.next_standard_normal();
        let b = rng.next_standard_normal();
        let u = su * a;
        let v = sv * (rho * a + (1.0 - rho * rho as f64).sqrt() * b);
        m_uv += u * v;
        m_u2 += u * u;
        m_v2 += v * v;
        m_u2v2 += u * u * v * v;
        m_u4v4 += u * u * v * v * u * u * v * v;
    }
    let inv = 1.0 / n as f64;
    m_uv *= inv;
    m_u2 *= inv;
    m_v2 *= inv;
    m_u2v2 *= inv;
    m_u4v4 *= inv;
    let se = ((m_u4v4 - m_u2v2 * m_u2v2) * inv).sqrt();
    let gap = (m_u2v2 - 2.0 * m_uv * m_uv - m_u2 * m_v2).abs();
    assert!(gap <= 3.0 * se, "gap {gap}, 3*SE {}", 3.0 * se);
}

/// Simulates the GP error model on the union of test points and target
/// atoms, and compares the empirical mean of the squared ISE-estimation
/// error to the prediction of `delta_bar_sq`.
fn gp_simulation_check(interpolating: bool) {
    let spec = KernelSpec::matern52_tensor(vec![0.5]);
    let x_m = PointSet::new(vec![0.15, 0.5, 0.85], 1).unwrap();
    let ck = condition(&spec, &x_m).unwrap();
    let x_n = PointSet::new(vec![0.05, 0.35, 0.65, 0.95], 1).unwrap();
    let mu = PointSet::new(
        (0..16).map(|k| 0.03 + 0.06 * k as f64).collect::<Vec<_>>(),
        1,
    )
    .unwrap();

    let delta = if interpolating {
        None
    } else {
        let y = [1.0, 1.8, 0.6];
        let eta = [0.7, 2.1, 0.4];
        Some(ErrorInterpolant::new(&ck, &y, &eta).unwrap())
    };

    let xi = WeightedTestSet::uniform(x_n.clone());
    let predicted = delta_bar_sq(&ck, &xi, &mu, delta.as_ref(), 1.0).unwrap();

    // joint covariance of the conditioned process on test points + atoms
    let union = x_n.concat(&mu).unwrap();
    let t = union.len();
    let mut cov = vec![0.0; t * t];
    for i in 0..t {
        for j in i..t {
            let v = ck.eval(union.row(i), union.row(j));
            cov[i * t + j] = v;
            cov[j * t + i] = v;
        }
    }
    let l = local_cholesky(&cov, t);
    let mean: Vec<f64> = union
        .rows()
        .map(|r| delta.as_ref().map_or(0.0, |d| d.eval(r)))
        .collect();

    let n = x_n.len();
    let m_atoms = mu.len();
    let draws = 100_000usize;
    let mut rng = Rng::new(31337);
    let mut acc = 0.0;
    let mut acc_sq = 0.0;
    // reconstruct the factor rows once
    let mut g = vec![0.0; t];
    for _ in 0..draws {
        for v in g.iter_mut() {
            *v = rng.next_standard_normal();
        }
        let mut ise_xi = 0.0;
        let mut ise_mu = 0.0;
        for i in 0..t {
            let mut z = mean[i];
            for k in 0..=i {
                z += l[i * t + k] * g[k];
            }
            let sq = z * z;
            if i < n {
                ise_xi += sq / n as f64;
            } else {
                ise_mu += sq / m_atoms as f64;
            }
        }
        let err = ise_xi - ise_mu;
        acc += err * err;
        acc_sq += err * err * err * err;
    }
    let mean_sq = acc / draws as f64;
    let var = (acc_sq / draws as f64 - mean_sq * mean_sq).max(0.0);
    let se = (var / draws as f64).sqrt();
    assert!(
        (mean_sq - predicted).abs() <= 3.0 * se,
        "interpolating={interpolating}: empirical {mean_sq}, predicted {predicted}, SE {se}"
    );
}

/// Plain Cholesky factor computed locally so the simulation does not depend
/// on the library's linear algebra; adds a tiny ridge for the near-singular
/// conditioned covariance.
fn local_cholesky(a: &[f64], n: usize) -> Vec<f64> {
    let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
    let ridge = 1e-10 * trace / n as f64;
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j] + if i == j { ridge } else { 0.0 };
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                assert!(s > 0.0, "covariance not positive definite at pivot {i}");
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    l
}

#[test]
fn delta_bar_sq_matches_gp_simulation_interpolating() {
    gp_simulation_check(true);
}

#[test]
fn delta_bar_sq_matches_gp_simulation_general() {
    gp_simulation_check(false);
}

#[test]
fn hadamard_product_of_positive_definite_grams_is_positive_definite() {
    let mut rng = Rng::new(8);
    let pts = random_points(&mut rng, 20, 2);
    let a = gram(&KernelSpec::matern52_tensor(vec![0.3, 0.3]), &pts, &pts).unwrap();
    let b = gram(&KernelSpec::matern52_tensor(vec![0.7, 0.5]), &pts, &pts).unwrap();
    let had: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    assert!(Cholesky::new(&had, 20).is_ok());
}
