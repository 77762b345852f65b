//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;

use parakahler_core::chevalley::chevalley_constants;
use parakahler_core::gradation::{catalog_lookup, grade_from_crossing, satake_consistent, CrossingSet};
use parakahler_core::koszul::{self, koszul_coefficients, koszul_form};
use parakahler_core::paracomplex::{
    einstein_residual, metric_matrix, ricci, ChartPotential, FdConfig, Monomial, SampleSpec,
};
use parakahler_core::rational;
use parakahler_core::rootsys::{Family, Root, RootSystem, SimpleType, Weight};
use parakahler_core::verify::{self, VerifyOptions, VerifyReport};

type Outcome = Result<String, String>;

fn ty(family: Family, rank: usize) -> SimpleType {
    SimpleType::new(family, rank).unwrap()
}

fn weight(coeffs: &[i64]) -> Weight {
    Weight(coeffs.iter().map(|&c| rational::int(c)).collect())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rs = RootSystem::build(ty(Family::G, 2));
    let roots = [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]];
    let cases: [(&[usize], [i64; 2], [i64; 2], [i64; 6]); 3] = [
        (&[1], [10, 0], [20, 10], [10, 0, 10, 20, 10, 10]),
        (&[2], [0, 6], [18, 12], [0, 6, 18, 18, 6, 12]),
        (&[1, 2], [4, 4], [20, 12], [4, 4, 16, 20, 8, 12]),
    ];
    for (crossed, pi, alpha, rho) in cases {
        let g = grade_from_crossing(&rs, &CrossingSet::from_one_based(2, crossed).unwrap()).unwrap();
        let psi = koszul_form(&g);
        ensure(psi == weight(&alpha), || format!("{crossed:?}: psi = {psi}"))?;
        let in_pi = rs.to_weight_basis(&psi);
        ensure(in_pi == weight(&pi).0, || format!("{crossed:?}: psi in pi basis {in_pi:?}"))?;
        let form = koszul::rho(&g);
        for (r, want) in roots.iter().zip(rho) {
            let got = form.get(&rs, &Root(r.to_vec())).cloned();
            ensure(got == Some(rational::int(want)), || format!("{crossed:?}: rho at {r:?} is {got:?}, want {want}"))?;
        }
    }
    within(start, Duration::from_secs(1))
}

/// Crossed nodes `i_1 < .. < i_r`, 1-based, padded with `i_0 = 0` and `i_{r+1} = ℓ+1`.
fn padded(rank: usize, c: &CrossingSet) -> Vec<i64> {
    let mut v = vec![0];
    v.extend(c.one_based().iter().map(|&i| i as i64));
    v.push(rank as i64 + 1);
    v
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for rank in 1..=8 {
        let rs = RootSystem::build(ty(Family::A, rank));
        for c in CrossingSet::all_nonempty(rank) {
            let g = grade_from_crossing(&rs, &c).unwrap();
            let idx = padded(rank, &c);
            let mut pi = vec![rational::zero(); rank];
            for k in 1..idx.len() - 1 {
                pi[idx[k] as usize - 1] = rational::int(2 * (idx[k + 1] - idx[k - 1]));
            }
            let psi = koszul_form(&g);
            ensure(rs.to_weight_basis(&psi) == pi, || format!("A{rank} {c}: psi = {psi}"))?;
            let formula = (rank as i64 + 1).pow(2) - idx.windows(2).map(|w| (w[1] - w[0]).pow(2)).sum::<i64>();
            let depth = g.depth();
            let by_degree: usize = (-depth..=depth).filter(|&p| p != 0).map(|p| g.dim_component(p)).sum();
            ensure(formula as usize == by_degree && by_degree == g.orbit_dimension(), || {
                format!("A{rank} {c}: formula {formula}, degree count {by_degree}, orbit {}", g.orbit_dimension())
            })?;
            count += 1;
        }
    }

    let rs = RootSystem::build(ty(Family::A, 3));
    let sl2h = catalog_lookup("sl2H").map_err(|e| e.to_string())?;
    let c2 = CrossingSet::from_one_based(3, &[2]).unwrap();
    let g = grade_from_crossing(&rs, &c2).unwrap();
    let coeff = koszul_coefficients(&g)[&1];
    ensure(coeff.b == 2 && coeff.a == 4, || format!("SL(2,H): {coeff:?}"))?;
    let psi = koszul_form(&g);
    ensure(psi == weight(&[4, 8, 4]), || format!("SL(2,H): psi = {psi}"))?;
    ensure(g.orbit_dimension() == 8, || format!("SL(2,H): dim {}", g.orbit_dimension()))?;
    let c1 = CrossingSet::from_one_based(3, &[1]).unwrap();
    ensure(satake_consistent(&sl2h, &c2) == Ok(true), || "SL(2,H): {α2} rejected".into())?;
    ensure(satake_consistent(&sl2h, &c1) == Ok(false), || "SL(2,H): {α1} accepted".into())?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("{count} crossings, {t}"))
}

fn sweep_types() -> Vec<SimpleType> {
    use Family::*;
    [(A, 1), (A, 2), (A, 3), (A, 4), (B, 2), (B, 3), (B, 4), (C, 3), (C, 4), (D, 4), (F, 4), (G, 2)]
        .into_iter()
        .map(|(f, r)| ty(f, r))
        .collect()
}

fn checks_pass(report: &VerifyReport, names: &[&str]) -> Result<String, String> {
    for name in names {
        let c = report.check(name).ok_or_else(|| format!("missing check {name}"))?;
        ensure(c.total > 0 && c.ok(), || {
            format!("{name}: {}/{} ({})", c.passed, c.total, c.first_failure.clone().unwrap_or_default())
        })?;
    }
    Ok(format!("{} gradations over {} algebras", report.gradations, report.algebras))
}

fn criterion_3(report: &VerifyReport, elapsed: Duration) -> Outcome {
    let limit = Duration::from_secs(60);
    ensure(elapsed < limit, || format!("sweep took {elapsed:.2?}, limit {limit:?}"))?;
    let s = checks_pass(report, &["koszul_trace_oracle"])?;
    Ok(format!("{s}, {elapsed:.2?}"))
}

fn criterion_4(report: &VerifyReport) -> Outcome {
    checks_pass(report, &["kernel_is_g0", "kernel_bruteforce", "omega_z_equals_rho"])
}

/// `|N_{α,β}| = p + 1` with `p` counted by walking `β - kα` through the root set.
fn root_strings_match(rs: &RootSystem) -> Result<(), String> {
    let l = chevalley_constants(rs);
    let total = 2 * rs.num_positive();
    for a in 0..total {
        for b in 0..total {
            let (ra, rb) = (rs.root(a), rs.root(b));
            if !rs.is_root(&ra.add(&rb)) {
                continue;
            }
            let mut p = 0;
            let mut walk = rb.sub(&ra);
            while rs.is_root(&walk) {
                p += 1;
                walk = walk.sub(&ra);
            }
            let n = l.n(a, b);
            ensure(n.abs() == p + 1, || format!("{}: N({ra:?},{rb:?}) = {n}, p = {p}", rs.simple_type()))?;
        }
    }
    Ok(())
}

fn criterion_5(report: &VerifyReport) -> Outcome {
    let s = checks_pass(report, &["jacobi", "killing_invariance", "structure_constants"])?;
    for t in sweep_types() {
        root_strings_match(&RootSystem::build(t))?;
    }
    Ok(s)
}

fn criterion_6(report: &VerifyReport) -> Outcome {
    checks_pass(
        report,
        &["type_11", "einstein_symmetric", "einstein_k_skew", "einstein_g0_invariant", "einstein_neutral_signature"],
    )
}

fn quartic() -> ChartPotential {
    let m = |c: i64, z: [u32; 2], zbar: [u32; 2]| Monomial { coeff: rational::int(c), z: z.to_vec(), zbar: zbar.to_vec() };
    ChartPotential::polynomial(
        2,
        vec![
            m(1, [1, 0], [1, 0]),
            m(2, [0, 1], [0, 1]),
            m(1, [2, 0], [1, 1]),
            m(1, [1, 1], [2, 0]),
            m(1, [1, 1], [1, 1]),
            m(-1, [0, 2], [0, 2]),
        ],
    )
    .unwrap()
}

const SAMPLES: [[f64; 4]; 4] =
    [[0.1, -0.2, 0.3, 0.05], [0.4, 0.2, -0.1, -0.3], [-0.25, 0.15, 0.2, 0.1], [0.0, 0.3, -0.2, 0.0]];

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Richardson-extrapolated central difference of a scalar function along coordinate `i`.
fn derivative(f: impl Fn(&[f64]) -> f64, p: &[f64], i: usize, h: f64) -> f64 {
    let d = |h: f64| {
        let at = |s: f64| {
            let mut q = p.to_vec();
            q[i] += s;
            f(&q)
        };
        (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
    };
    (16.0 * d(h / 2.0) - d(h)) / 15.0
}

/// `∂det H/∂u^α = det H · tr(H⁻¹ ∂_{u^α} H)` with the left side differenced numerically
/// and `∂H` taken from the exact polynomial.
fn determinant_identity(f: &ChartPotential) -> Result<f64, String> {
    let n = f.dimension();
    let poly = f.adapted_poly().ok_or("not polynomial")?;
    let hess: Vec<Vec<_>> = (0..n).map(|a| (0..n).map(|b| poly.derivative(a).derivative(n + b)).collect()).collect();
    let cfg = FdConfig::default();
    let det = |q: &[f64]| metric_matrix(f, q, &cfg).unwrap().determinant();
    let mut worst: f64 = 0.0;
    for p in SAMPLES {
        let h = metric_matrix(f, &p, &cfg).map_err(|e| e.to_string())?;
        let hinv = h.clone().try_inverse().ok_or("singular metric")?;
        for var in 0..2 * n {
            let dh = DMatrix::from_fn(n, n, |a, b| hess[a][b].derivative(var).evaluate_with(&p, rational::to_f64));
            let rhs = h.determinant() * (&hinv * dh).trace();
            let lhs = derivative(det, &p, var, 1e-3);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(worst)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cfg = FdConfig::default();

    let flat = ChartPotential::flat(2);
    let (mut flat_ric, mut flat_fd): (f64, f64) = (0.0, 0.0);
    for p in SAMPLES {
        flat_ric = flat_ric.max(max_abs(&ricci(&flat, &p, &cfg).map_err(|e| e.to_string())?));
        let fd = ricci(&flat, &p, &FdConfig::finite_difference()).map_err(|e| e.to_string())?;
        flat_fd = flat_fd.max(max_abs(&fd));
    }
    ensure(flat_ric <= 1e-10, || format!("flat |ric| = {flat_ric:e}"))?;

    let scale = 1.0;
    let log = ChartPotential::log_model(1, scale);
    let grid = SampleSpec::Grid { count: 9, radius: 0.3 }.points(1);
    ensure(grid.len() == 81, || "grid size".into())?;
    let residual = einstein_residual(&log, 2.0 / scale, &grid, &cfg).map_err(|e| e.to_string())?;
    ensure(residual < 1e-5, || format!("log model residual {residual:e}"))?;

    let f = quartic();
    let mut agreement: f64 = 0.0;
    for p in SAMPLES {
        let exact = metric_matrix(&f, &p, &cfg).map_err(|e| e.to_string())?;
        let fd = metric_matrix(&f, &p, &FdConfig::finite_difference()).map_err(|e| e.to_string())?;
        agreement = agreement.max(max_abs(&(exact - fd)));
    }
    ensure(agreement < 1e-7, || format!("polynomial vs finite difference {agreement:e}"))?;

    let det = determinant_identity(&f)?;
    ensure(det < 1e-7, || format!("determinant identity {det:e}"))?;

    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "flat {flat_ric:.1e} (finite-difference path {flat_fd:.1e}), log residual {residual:.1e}, metric paths {agreement:.1e}, det identity {det:.1e}, {t}"
    ))
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, Outcome)> = vec![(1, criterion_1()), (2, criterion_2())];

    let start = Instant::now();
    let report = verify::run(4, &VerifyOptions { inject_fault: false, types: Some(sweep_types()) });
    let elapsed = start.elapsed();
    results.push((3, criterion_3(&report, elapsed)));
    results.push((4, criterion_4(&report)));
    results.push((5, criterion_5(&report)));
    results.push((6, criterion_6(&report)));
    results.push((7, criterion_7()));

    let mut failed = false;
    for (n, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed = true;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    println!("criterion 8: NOTE (covered by the structural suite 3-6 and the chart checks in 7)");
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
