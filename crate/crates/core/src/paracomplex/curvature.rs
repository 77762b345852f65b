//! Metric, Christoffel symbols and Ricci curvature of a chart potential.
//!
//! With `H_{αβ} = ∂²F/∂u^α∂v^β` the para-complex metric `g_{αβ̄}` has idempotent
//! components `(H_{αβ}, H_{βα})`. The connection has two nonzero blocks,
//!
//! ```text
//! Γ₊^α_{βγ} = Σ_μ (H⁻¹)_{μα} ∂_{u^γ} H_{βμ}
//! Γ₋^α_{βγ} = Σ_μ (H⁻¹)_{αμ} ∂_{v^γ} H_{μβ}
//! ```
//!
//! and `ric_{αβ̄} = RICCI_SIGN · ∂_{u^α}∂_{v^β} log|det H|`.
//!
//! Polynomial potentials are differentiated exactly; builtins use 5-point
//! central differences with one Richardson step.

use nalgebra::DMatrix;

use super::poly::Poly;
use super::potential::ChartPotential;
use crate::error::ParaError;
use crate::rational;

/// Global sign in `ric = s · ∂∂̄ log det g`.
pub const RICCI_SIGN: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffMode {
    /// Exact for polynomials, finite differences for builtins.
    Auto,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    /// Step for second derivatives of the potential.
    pub h: f64,
    /// Step for derivatives of the metric (Christoffel symbols, Ricci).
    pub outer_h: f64,
    pub richardson: bool,
    /// Minimum of [`ChartPotential::singular_margin`] at a sample point.
    pub margin: f64,
    pub mode: DiffMode,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self { h: 1e-3, outer_h: 5e-2, richardson: true, margin: 0.1, mode: DiffMode::Auto }
    }
}

impl FdConfig {
    pub fn finite_difference() -> Self {
        Self { mode: DiffMode::FiniteDifference, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSample {
    /// `[u¹..uⁿ, v¹..vⁿ]`.
    pub point: Vec<f64>,
    /// `H_{αβ} = ∂²F/∂u^α∂v^β`.
    pub g: DMatrix<f64>,
    /// `∂²log|det H|/∂u^α∂v^β`.
    pub logdet_hessian: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    n: usize,
    plus: Vec<f64>,
    minus: Vec<f64>,
}

impl Christoffel {
    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `Γ^α_{βγ}` on the `u` block.
    pub fn plus(&self, a: usize, b: usize, c: usize) -> f64 {
        self.plus[self.idx(a, b, c)]
    }

    /// `Γ^ᾱ_{β̄γ̄}` on the `v` block.
    pub fn minus(&self, a: usize, b: usize, c: usize) -> f64 {
        self.minus[self.idx(a, b, c)]
    }

    /// Largest `|Γ^α_{βγ} - Γ^α_{γβ}|` over both blocks.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    worst = worst
                        .max((self.plus(a, b, c) - self.plus(a, c, b)).abs())
                        .max((self.minus(a, b, c) - self.minus(a, c, b)).abs());
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.plus.iter().chain(&self.minus).fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Exact derivative polynomials of `H`, converted to floating point.
struct ExactMetric {
    n: usize,
    h: Vec<Poly<f64>>,
    /// `[γ][α·n+β]` = `∂_{u^γ} H_{αβ}`.
    du: Vec<Vec<Poly<f64>>>,
    dv: Vec<Vec<Poly<f64>>>,
    /// `[γ·n+δ][α·n+β]` = `∂_{u^γ}∂_{v^δ} H_{αβ}`.
    duv: Vec<Vec<Poly<f64>>>,
}

impl ExactMetric {
    fn new(f: &ChartPotential) -> Option<Self> {
        let n = f.dimension();
        let p = f.adapted_poly()?.map(rational::to_f64);
        let h: Vec<Poly<f64>> =
            (0..n * n).map(|k| p.derivative(k / n).derivative(n + k % n)).collect();
        let du: Vec<Vec<Poly<f64>>> = (0..n).map(|g| h.iter().map(|x| x.derivative(g)).collect()).collect();
        let dv: Vec<Vec<Poly<f64>>> = (0..n).map(|g| h.iter().map(|x| x.derivative(n + g)).collect()).collect();
        let duv = (0..n * n).map(|k| du[k / n].iter().map(|x| x.derivative(n + k % n)).collect()).collect();
        Some(Self { n, h, du, dv, duv })
    }

    fn eval(&self, polys: &[Poly<f64>], p: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |a, b| polys[a * self.n + b].evaluate(p))
    }
}

fn check_point(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<(), ParaError> {
    let n = f.dimension();
    if p.len() != 2 * n {
        return Err(ParaError::Dimension { expected: 2 * n, got: p.len() });
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(ParaError::Inadmissible("non-finite coordinate".into()));
    }
    let m = f.singular_margin(p);
    if m < cfg.margin {
        return Err(ParaError::Inadmissible(format!(
            "distance {m:.6} to the singular set is below the margin {}",
            cfg.margin
        )));
    }
    Ok(())
}

/// Fails unless `p` is a valid, admissible sample point.
pub fn check_admissible(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<(), ParaError> {
    check_point(f, p, cfg)?;
    let h = metric_matrix(f, p, cfg)?;
    ensure_nonsingular(&h)
}

fn ensure_nonsingular(h: &DMatrix<f64>) -> Result<(), ParaError> {
    let det = h.determinant();
    let scale = h.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0).powi(h.nrows() as i32);
    if !det.is_finite() || det.abs() <= 1e-12 * scale {
        return Err(ParaError::SingularMetric(det));
    }
    Ok(())
}

const OFFSETS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];
const WEIGHTS: [f64; 4] = [1.0, -8.0, 8.0, -1.0];

fn step(p: &[f64], i: usize, h: f64) -> f64 {
    h * p[i].abs().max(1.0)
}

fn shifted(p: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut q = p.to_vec();
    for &(i, d) in moves {
        q[i] += d;
    }
    q
}

fn richardson(cfg: &FdConfig, coarse: f64, fine: impl FnOnce() -> Result<f64, ParaError>) -> Result<f64, ParaError> {
    if cfg.richardson {
        Ok((16.0 * fine()? - coarse) / 15.0)
    } else {
        Ok(coarse)
    }
}

/// `∂f/∂p_i` by the 5-point stencil, `O(h⁴)`.
fn d1_raw<F: Fn(&[f64]) -> Result<f64, ParaError>>(f: &F, p: &[f64], i: usize, h: f64) -> Result<f64, ParaError> {
    let s = step(p, i, h);
    let mut acc = 0.0;
    for (o, w) in OFFSETS.iter().zip(WEIGHTS) {
        acc += w * f(&shifted(p, &[(i, o * s)]))?;
    }
    Ok(acc / (12.0 * s))
}

/// `∂²f/∂p_i∂p_j` for `i ≠ j` by the tensor product of 5-point stencils.
fn d2_raw<F: Fn(&[f64]) -> Result<f64, ParaError>>(
    f: &F,
    p: &[f64],
    i: usize,
    j: usize,
    h: f64,
) -> Result<f64, ParaError> {
    let (si, sj) = (step(p, i, h), step(p, j, h));
    let mut acc = 0.0;
    for (oi, wi) in OFFSETS.iter().zip(WEIGHTS) {
        for (oj, wj) in OFFSETS.iter().zip(WEIGHTS) {
            acc += wi * wj * f(&shifted(p, &[(i, oi * si), (j, oj * sj)]))?;
        }
    }
    Ok(acc / (144.0 * si * sj))
}

fn d1<F: Fn(&[f64]) -> Result<f64, ParaError>>(
    f: &F,
    p: &[f64],
    i: usize,
    h: f64,
    cfg: &FdConfig,
) -> Result<f64, ParaError> {
    richardson(cfg, d1_raw(f, p, i, h)?, || d1_raw(f, p, i, h / 2.0))
}

fn d2<F: Fn(&[f64]) -> Result<f64, ParaError>>(
    f: &F,
    p: &[f64],
    i: usize,
    j: usize,
    h: f64,
    cfg: &FdConfig,
) -> Result<f64, ParaError> {
    richardson(cfg, d2_raw(f, p, i, j, h)?, || d2_raw(f, p, i, j, h / 2.0))
}

fn use_exact(f: &ChartPotential, cfg: &FdConfig) -> Option<ExactMetric> {
    match cfg.mode {
        DiffMode::Auto => ExactMetric::new(f),
        DiffMode::FiniteDifference => None,
    }
}

/// `H_{αβ}` alone.
pub fn metric_matrix(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<DMatrix<f64>, ParaError> {
    check_point(f, p, cfg)?;
    match use_exact(f, cfg) {
        Some(ex) => Ok(ex.eval(&ex.h, p)),
        None => fd_metric(f, p, cfg),
    }
}

fn fd_metric(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<DMatrix<f64>, ParaError> {
    let n = f.dimension();
    let value = |q: &[f64]| f.value(q);
    let mut h = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            h[(a, b)] = d2(&value, p, a, n + b, cfg.h, cfg)?;
        }
    }
    Ok(h)
}

fn inverse(h: &DMatrix<f64>) -> Result<DMatrix<f64>, ParaError> {
    ensure_nonsingular(h)?;
    h.clone().try_inverse().ok_or_else(|| ParaError::SingularMetric(h.determinant()))
}

pub fn metric_from_potential(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<MetricSample, ParaError> {
    check_point(f, p, cfg)?;
    let n = f.dimension();
    match use_exact(f, cfg) {
        Some(ex) => {
            let g = ex.eval(&ex.h, p);
            let hinv = inverse(&g)?;
            // ∂_u∂_v log det H = tr(H⁻¹ ∂_u∂_v H) - tr(H⁻¹ ∂_u H H⁻¹ ∂_v H)
            let du: Vec<DMatrix<f64>> = (0..n).map(|c| &hinv * ex.eval(&ex.du[c], p)).collect();
            let dv: Vec<DMatrix<f64>> = (0..n).map(|c| &hinv * ex.eval(&ex.dv[c], p)).collect();
            let logdet_hessian = DMatrix::from_fn(n, n, |a, b| {
                (&hinv * ex.eval(&ex.duv[a * n + b], p)).trace() - (&du[a] * &dv[b]).trace()
            });
            Ok(MetricSample { point: p.to_vec(), g, logdet_hessian })
        }
        None => {
            let g = fd_metric(f, p, cfg)?;
            ensure_nonsingular(&g)?;
            let sign = g.determinant().signum();
            let logdet = |q: &[f64]| -> Result<f64, ParaError> {
                let d = fd_metric(f, q, cfg)?.determinant();
                if d.signum() != sign || d == 0.0 {
                    return Err(ParaError::DeterminantSignChange);
                }
                Ok(d.abs().ln())
            };
            let mut hess = DMatrix::zeros(n, n);
            for a in 0..n {
                for b in 0..n {
                    hess[(a, b)] = d2(&logdet, p, a, n + b, cfg.outer_h, cfg)?;
                }
            }
            Ok(MetricSample { point: p.to_vec(), g, logdet_hessian: hess })
        }
    }
}

/// `∂_{u^γ} H` (for `minus = false`) or `∂_{v^γ} H`, one matrix per `γ`.
fn metric_derivatives(
    f: &ChartPotential,
    p: &[f64],
    cfg: &FdConfig,
    minus: bool,
) -> Result<Vec<DMatrix<f64>>, ParaError> {
    let n = f.dimension();
    if let Some(ex) = use_exact(f, cfg) {
        let src = if minus { &ex.dv } else { &ex.du };
        return Ok(src.iter().map(|polys| ex.eval(polys, p)).collect());
    }
    (0..n)
        .map(|c| {
            let coord = if minus { n + c } else { c };
            let mut m = DMatrix::zeros(n, n);
            for a in 0..n {
                for b in 0..n {
                    let entry = |q: &[f64]| -> Result<f64, ParaError> {
                        let value = |r: &[f64]| f.value(r);
                        d2(&value, q, a, n + b, cfg.h, cfg)
                    };
                    m[(a, b)] = d1(&entry, p, coord, cfg.outer_h, cfg)?;
                }
            }
            Ok(m)
        })
        .collect()
}

pub fn christoffel(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<Christoffel, ParaError> {
    let n = f.dimension();
    let h = metric_matrix(f, p, cfg)?;
    let hinv = inverse(&h)?;
    let du = metric_derivatives(f, p, cfg, false)?;
    let dv = metric_derivatives(f, p, cfg, true)?;
    let mut plus = vec![0.0; n * n * n];
    let mut minus = vec![0.0; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let k = (a * n + b) * n + c;
                plus[k] = (0..n).map(|m| hinv[(m, a)] * du[c][(b, m)]).sum();
                minus[k] = (0..n).map(|m| hinv[(a, m)] * dv[c][(m, b)]).sum();
            }
        }
    }
    Ok(Christoffel { n, plus, minus })
}

pub fn ricci(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<DMatrix<f64>, ParaError> {
    Ok(metric_from_potential(f, p, cfg)?.logdet_hessian * RICCI_SIGN)
}

/// Least-squares `λ` with `ric ≈ λ g` at one point.
pub fn fit_lambda(f: &ChartPotential, p: &[f64], cfg: &FdConfig) -> Result<f64, ParaError> {
    let s = metric_from_potential(f, p, cfg)?;
    let ric = s.logdet_hessian * RICCI_SIGN;
    let num = ric.component_mul(&s.g).sum();
    let den = s.g.component_mul(&s.g).sum();
    Ok(num / den)
}

/// `max_p max_{αβ} |ric_{αβ̄} - λ g_{αβ̄}|`.
pub fn einstein_residual(f: &ChartPotential, lambda: f64, points: &[Vec<f64>], cfg: &FdConfig) -> Result<f64, ParaError> {
    let mut worst: f64 = 0.0;
    for p in points {
        let s = metric_from_potential(f, p, cfg)?;
        let r = s.logdet_hessian * RICCI_SIGN - s.g * lambda;
        worst = worst.max(r.amax());
    }
    Ok(worst)
}
