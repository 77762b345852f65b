//! Independent oracles for the chart curvature pipeline.

use nalgebra::DMatrix;

use parakahler_core::paracomplex::{
    christoffel, fit_lambda, metric_from_potential, metric_matrix, ricci, ChartPotential, FdConfig, Monomial,
};
use parakahler_core::rational;

fn mono(c: i64, z: &[u32], zbar: &[u32]) -> Monomial {
    Monomial { coeff: rational::int(c), z: z.to_vec(), zbar: zbar.to_vec() }
}

/// A non-flat real potential in two variables.
fn quartic() -> ChartPotential {
    ChartPotential::polynomial(
        2,
        vec![
            mono(1, &[1, 0], &[1, 0]),
            mono(2, &[0, 1], &[0, 1]),
            mono(1, &[2, 0], &[1, 1]),
            mono(1, &[1, 1], &[2, 0]),
            mono(1, &[1, 1], &[1, 1]),
            mono(-1, &[0, 2], &[0, 2]),
        ],
    )
    .unwrap()
}

fn central<F: Fn(&[f64]) -> f64>(f: F, p: &[f64], i: usize, h: f64) -> f64 {
    let at = |d: f64| {
        let mut q = p.to_vec();
        q[i] += d;
        f(&q)
    };
    (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
}

/// Full 2n×2n real metric `[[0, H], [Hᵀ, 0]]` in coordinates `(u, v)`.
fn real_metric(f: &ChartPotential, p: &[f64]) -> DMatrix<f64> {
    let n = f.dimension();
    let h = metric_matrix(f, p, &FdConfig::default()).unwrap();
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            g[(a, n + b)] = h[(a, b)];
            g[(n + b, a)] = h[(a, b)];
        }
    }
    g
}

/// Levi-Civita symbols `Γ^k_{ij}` of the real metric, indexed `[k][i][j]`.
fn levi_civita(f: &ChartPotential, p: &[f64]) -> Vec<Vec<Vec<f64>>> {
    let m = 2 * f.dimension();
    let ginv = real_metric(f, p).try_inverse().unwrap();
    let dg: Vec<DMatrix<f64>> = (0..m)
        .map(|i| DMatrix::from_fn(m, m, |a, b| central(|q| real_metric(f, q)[(a, b)], p, i, 1e-3)))
        .collect();
    (0..m)
        .map(|k| {
            (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            (0..m).map(|l| 0.5 * ginv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)])).sum()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

#[test]
fn christoffel_matches_levi_civita() {
    let f = quartic();
    let n = 2;
    for p in [[0.1, -0.2, 0.3, 0.05], [0.4, 0.2, -0.1, -0.3]] {
        let gamma = christoffel(&f, &p, &FdConfig::default()).unwrap();
        let lc = levi_civita(&f, &p);
        for k in 0..2 * n {
            for i in 0..2 * n {
                for j in 0..2 * n {
                    let (ku, iu, ju) = (k < n, i < n, j < n);
                    let expected = match (ku, iu, ju) {
                        (true, true, true) => gamma.plus(k, i, j),
                        (false, false, false) => gamma.minus(k - n, i - n, j - n),
                        _ => 0.0,
                    };
                    assert!((lc[k][i][j] - expected).abs() < 1e-7, "Γ^{k}_{i}{j}: {} vs {expected}", lc[k][i][j]);
                }
            }
        }
        assert!(gamma.max_asymmetry() < 1e-12);
    }
}

#[test]
fn ricci_from_contracted_christoffel() {
    // ric_{αβ̄} = -∂_{v^β} Σ_γ Γ^γ_{αγ}
    let f = quartic();
    let p = [0.2, -0.1, 0.15, 0.3];
    let ric = ricci(&f, &p, &FdConfig::default()).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            let contracted = |q: &[f64]| {
                let g = christoffel(&f, q, &FdConfig::default()).unwrap();
                (0..2).map(|c| g.plus(c, a, c)).sum::<f64>()
            };
            let expected = -central(contracted, &p, 2 + b, 1e-3);
            assert!((ric[(a, b)] - expected).abs() < 1e-7, "{} vs {expected}", ric[(a, b)]);
        }
    }
}

#[test]
fn log_model_symbolic() {
    for c in [1.0, 3.0] {
        let f = ChartPotential::log_model(1, c);
        for p in [[0.0, 0.0], [0.1, 0.0], [0.25, -0.3], [-0.2, -0.2]] {
            let (u, v) = (p[0], p[1]);
            let w = 1.0 + u * v;
            let s = metric_from_potential(&f, &p, &FdConfig::default()).unwrap();
            assert!((s.g[(0, 0)] - c / (w * w)).abs() < 1e-9);
            let g = christoffel(&f, &p, &FdConfig::default()).unwrap();
            assert!((g.plus(0, 0, 0) + 2.0 * v / w).abs() < 1e-7);
            assert!((g.minus(0, 0, 0) + 2.0 * u / w).abs() < 1e-7);
            let ric = ricci(&f, &p, &FdConfig::default()).unwrap();
            assert!((ric[(0, 0)] - 2.0 / (w * w)).abs() < 1e-6, "{}", ric[(0, 0)]);
        }
        assert!((fit_lambda(&f, &[0.0, 0.0], &FdConfig::default()).unwrap() - 2.0 / c).abs() < 1e-6);
    }
}

#[test]
fn finite_difference_is_fourth_order() {
    let f = ChartPotential::polynomial(1, vec![mono(1, &[5], &[5]), mono(1, &[1], &[1])]).unwrap();
    let p = [0.5, 0.7];
    let exact = metric_matrix(&f, &p, &FdConfig::default()).unwrap()[(0, 0)];
    let err = |h: f64| {
        let cfg = FdConfig { h, richardson: false, ..FdConfig::finite_difference() };
        (metric_matrix(&f, &p, &cfg).unwrap()[(0, 0)] - exact).abs()
    };
    let (e1, e2) = (err(0.1), err(0.05));
    assert!(e1 / e2 >= 8.0, "ratio {}", e1 / e2);
}
