//! Batch verification of the exact structural suite.
//!
//! Every simple type up to a rank bound is built, checked as a Lie algebra,
//! and then every nonempty crossing set is checked against the Koszul and
//! Einstein invariants. Work fans out over rayon; results are collected in
//! type and crossing order so reports are deterministic.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{chevalley_constants, string_below, AlgebraElement, LieAlgebraData};
use crate::gradation::{grade_from_crossing, CrossingSet, Gradation};
use crate::koszul::{self, TwoForm};
use crate::linalg::RationalMatrix;
use crate::rational::{self, Rational};
use crate::rootsys::{RootSystem, SimpleType, Weight};

pub const ALGEBRA_CHECKS: &[&str] =
    &["jacobi", "killing_invariance", "structure_constants", "cartan_killing_nondegenerate"];

pub const GRADATION_CHECKS: &[&str] = &[
    "grading_element",
    "fundamental",
    "koszul_trace_oracle",
    "koszul_consistency",
    "kernel_is_g0",
    "kernel_bruteforce",
    "omega_z_equals_rho",
    "closedness",
    "type_11",
    "coefficient_positivity",
    "rho_g0_invariance",
    "einstein_symmetric",
    "einstein_k_skew",
    "einstein_g0_invariant",
    "einstein_neutral_signature",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

impl CheckSummary {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_rank: usize,
    pub algebras: usize,
    pub gradations: usize,
    pub checks: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::ok)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Run against algebras with one structure constant sign flipped.
    pub inject_fault: bool,
    /// Restrict to these types instead of every type up to the rank bound.
    pub types: Option<Vec<SimpleType>>,
}

/// Outcome of one named check on one case.
type Outcome = (&'static str, String, bool);

pub fn run(max_rank: usize, opts: &VerifyOptions) -> VerifyReport {
    let types = opts.types.clone().unwrap_or_else(|| SimpleType::all_up_to(max_rank));
    let per_type: Vec<(usize, Vec<Outcome>)> = types
        .par_iter()
        .map(|&t| {
            let rs = RootSystem::build(t);
            let mut l = chevalley_constants(&rs);
            if opts.inject_fault {
                l = l.with_corrupted_constant();
            }
            let mut out = check_algebra(&l);
            let crossings = CrossingSet::all_nonempty(rs.rank());
            let per_crossing: Vec<Vec<Outcome>> = crossings
                .par_iter()
                .map(|c| {
                    let g = grade_from_crossing(&rs, c).expect("crossing matches rank");
                    check_gradation(&g, &l)
                })
                .collect();
            out.extend(per_crossing.into_iter().flatten());
            (crossings.len(), out)
        })
        .collect();

    let gradations = per_type.iter().map(|(n, _)| n).sum();
    let mut checks: Vec<CheckSummary> = ALGEBRA_CHECKS
        .iter()
        .chain(GRADATION_CHECKS)
        .map(|&name| CheckSummary { name: name.into(), passed: 0, total: 0, first_failure: None })
        .collect();
    for (_, outcomes) in &per_type {
        for (name, case, ok) in outcomes {
            let c = checks.iter_mut().find(|c| c.name == *name).expect("known check");
            c.total += 1;
            if *ok {
                c.passed += 1;
            } else if c.first_failure.is_none() {
                c.first_failure = Some(case.clone());
            }
        }
    }
    VerifyReport { max_rank, algebras: types.len(), gradations, checks }
}

/// Bracket of a sparse vector with a basis element, accumulated into `out`.
fn bracket_sparse_into(l: &LieAlgebraData, x: &[(usize, i64)], j: usize, out: &mut [i64]) {
    for &(i, c) in x {
        for &(k, d) in l.basis_bracket(i, j) {
            out[k] += c * d;
        }
    }
}

pub fn check_jacobi(l: &LieAlgebraData) -> Result<(), String> {
    let dim = l.dim();
    let mut acc = vec![0i64; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                acc.iter_mut().for_each(|a| *a = 0);
                // [b_i,[b_j,b_k]] = -[[b_j,b_k], b_i], and cyclically
                for (a, b, c) in [(j, k, i), (k, i, j), (i, j, k)] {
                    let inner: Vec<(usize, i64)> = l.basis_bracket(a, b).iter().map(|&(p, v)| (p, -v)).collect();
                    bracket_sparse_into(l, &inner, c, &mut acc);
                }
                if acc.iter().any(|&a| a != 0) {
                    return Err(format!("basis triple ({i},{j},{k})"));
                }
            }
        }
    }
    Ok(())
}

pub fn check_killing_invariance(l: &LieAlgebraData) -> Result<(), String> {
    let dim = l.dim();
    let b = l.killing_matrix();
    let pair = |v: &[(usize, i64)], k: usize| -> i64 { v.iter().map(|&(p, c)| c * b[p * dim + k]).sum() };
    for i in 0..dim {
        for j in 0..dim {
            let ij = l.basis_bracket(i, j);
            for k in 0..dim {
                // B([b_i,b_j],b_k) = B(b_i,[b_j,b_k])
                let lhs = pair(ij, k);
                let rhs: i64 = l.basis_bracket(j, k).iter().map(|&(p, c)| c * b[i * dim + p]).sum();
                if lhs != rhs {
                    return Err(format!("basis triple ({i},{j},{k})"));
                }
            }
        }
    }
    Ok(())
}

pub fn check_structure_constants(l: &LieAlgebraData) -> Result<(), String> {
    let rs = l.root_system();
    let n2 = 2 * rs.num_positive();
    for a in 0..n2 {
        for b in 0..n2 {
            let (ra, rb) = (rs.root(a), rs.root(b));
            let expected = if rs.is_root(&ra.add(&rb)) { string_below(rs, &ra, &rb) + 1 } else { 0 };
            if l.n(a, b).abs() != expected {
                return Err(format!("N({ra},{rb}) = {}, expected ±{expected}", l.n(a, b)));
            }
        }
    }
    Ok(())
}

fn check_algebra(l: &LieAlgebraData) -> Vec<Outcome> {
    let t = l.root_system().simple_type().to_string();
    let tag = |r: Result<(), String>| match r {
        Ok(()) => (t.clone(), true),
        Err(e) => (format!("{t}: {e}"), false),
    };
    let nondeg = l.cartan_killing().determinant() != rational::zero();
    let (c1, o1) = tag(check_jacobi(l));
    let (c2, o2) = tag(check_killing_invariance(l));
    let (c3, o3) = tag(check_structure_constants(l));
    vec![
        ("jacobi", c1, o1),
        ("killing_invariance", c2, o2),
        ("structure_constants", c3, o3),
        ("cartan_killing_nondegenerate", t.clone(), nondeg),
    ]
}

/// `koszul_trace` equals `⟨ψ, x⟩` on Cartan basis vectors and vanishes on root vectors.
pub fn check_trace_oracle(g: &Gradation, l: &LieAlgebraData, psi: &Weight) -> Result<(), String> {
    for p in 0..l.dim() {
        let x = l.basis(p);
        let expected = if p < l.rank() { l.evaluate_weight(psi, &x) } else { rational::zero() };
        let got = koszul::koszul_trace(g, l, &x);
        if got != expected {
            return Err(format!("basis {p}: trace {got}, expected {expected}"));
        }
    }
    Ok(())
}

/// Nullspace of `(b_i, b_j) ↦ ψ([b_i, b_j])` computed from brackets, compared with `𝔤₀`.
pub fn check_kernel_bruteforce(g: &Gradation, l: &LieAlgebraData, psi: &Weight) -> Result<(), String> {
    let dim = l.dim();
    let values = l.root_system().to_weight_basis(psi);
    let gram = RationalMatrix::from_fn(dim, dim, |i, j| {
        let mut acc = rational::zero();
        for &(k, c) in l.basis_bracket(i, j) {
            if k < l.rank() {
                acc += &values[k] * rational::int(c);
            }
        }
        acc
    });
    let null = gram.nullspace();
    let g0: Vec<usize> = (0..dim).filter(|&p| g.in_g0(l, p)).collect();
    if null.len() != g0.len() {
        return Err(format!("kernel dimension {}, dim g0 = {}", null.len(), g0.len()));
    }
    for v in &null {
        if let Some(p) = (0..dim).find(|&p| !v[p].is_zero() && !g.in_g0(l, p)) {
            return Err(format!("kernel vector has component on basis {p} outside g0"));
        }
    }
    Ok(())
}

/// `Σ_cyclic ρ([X,Y],Z) = 0` on all basis triples.
pub fn check_closed(f: &TwoForm, l: &LieAlgebraData) -> Result<(), String> {
    let dim = l.dim();
    let gram: Vec<Rational> = (0..dim * dim).map(|k| f.evaluate_basis(l, k / dim, k % dim)).collect();
    let on = |v: &[(usize, i64)], z: usize| -> Rational {
        let mut acc = rational::zero();
        for &(p, c) in v {
            let e = &gram[p * dim + z];
            if !e.is_zero() {
                acc += e * rational::int(c);
            }
        }
        acc
    };
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let s = on(l.basis_bracket(i, j), k) + on(l.basis_bracket(j, k), i) + on(l.basis_bracket(k, i), j);
                if !s.is_zero() {
                    return Err(format!("basis triple ({i},{j},{k})"));
                }
            }
        }
    }
    Ok(())
}

/// `ρ([h,x],y) + ρ(x,[h,y]) = 0` for `h` in a basis of `𝔤₀`.
pub fn check_rho_invariance(f: &TwoForm, g: &Gradation, l: &LieAlgebraData) -> Result<(), String> {
    let dim = l.dim();
    let gram: Vec<Rational> = (0..dim * dim).map(|k| f.evaluate_basis(l, k / dim, k % dim)).collect();
    for h in (0..dim).filter(|&p| g.in_g0(l, p)) {
        for x in 0..dim {
            for y in 0..dim {
                let mut s = rational::zero();
                for &(p, c) in l.basis_bracket(h, x) {
                    s += &gram[p * dim + y] * rational::int(c);
                }
                for &(p, c) in l.basis_bracket(h, y) {
                    s += &gram[x * dim + p] * rational::int(c);
                }
                if !s.is_zero() {
                    return Err(format!("h = basis {h}, pair ({x},{y})"));
                }
            }
        }
    }
    Ok(())
}

/// `2 Σ a_i π_i = ψ` and `ψ` has no component on uncrossed fundamental weights.
pub fn check_consistency(g: &Gradation, psi: &Weight) -> Result<(), String> {
    let rs = g.root_system();
    let coeffs = koszul::koszul_coefficients(g);
    let mut sum = Weight::zero(rs.rank());
    for (&i, c) in &coeffs {
        if c.a < 2 {
            return Err(format!("a_{} = {} < 2", i + 1, c.a));
        }
        sum = sum.add(&rs.fundamental_weight(i).scale(&rational::int(2 * c.a)));
    }
    if &sum != psi {
        return Err(format!("2Σa_iπ_i = {sum}, ψ = {psi}"));
    }
    let pi = rs.to_weight_basis(psi);
    if let Some(i) = (0..rs.rank()).find(|&i| !g.crossing().contains(i) && !pi[i].is_zero()) {
        return Err(format!("ψ has π_{} component on an uncrossed node", i + 1));
    }
    Ok(())
}

fn check_gradation(g: &Gradation, l: &LieAlgebraData) -> Vec<Outcome> {
    let case = format!("{} {}", g.root_system().simple_type(), g.crossing());
    let psi = koszul::koszul_form(g);
    let rho = koszul::rho(g);
    let mut out: Vec<Outcome> = Vec::new();
    let mut push = |name: &'static str, r: Result<(), String>| match r {
        Ok(()) => out.push((name, case.clone(), true)),
        Err(e) => out.push((name, format!("{case}: {e}"), false)),
    };
    let flag = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };

    push("grading_element", flag(grading_action_ok(g, l), "[d, X] != deg(X) X"));
    push("fundamental", flag(g.is_fundamental() && g.generates_nilradical(l), "g_1 does not generate m+"));
    push("koszul_trace_oracle", check_trace_oracle(g, l, &psi));
    push("koszul_consistency", check_consistency(g, &psi));
    push("kernel_is_g0", flag(koszul::kernel_is_g0(&rho, g, l), "kernel differs from g0"));
    push("kernel_bruteforce", check_kernel_bruteforce(g, l, &psi));
    let omega = l.killing_dual(&psi).map_err(|e| e.to_string()).and_then(|z| {
        let w = koszul::omega_z(l, &z).map_err(|e| e.to_string())?;
        flag(w == rho, "omega_z differs from d psi")
    });
    push("omega_z_equals_rho", omega);
    push("closedness", check_closed(&rho, l));
    push("type_11", flag(koszul::is_type_11(&rho, g, l), "rho pairs components with i + j != 0"));
    push("coefficient_positivity", flag(koszul::is_positive_on_nilradical(&rho, g), "n(psi, alpha) <= 0 on m+"));
    push("rho_g0_invariance", check_rho_invariance(&rho, g, l));
    match koszul::einstein_structure(g, l, &rational::one()) {
        Ok(e) => {
            push("einstein_symmetric", flag(e.is_symmetric(), "metric not symmetric"));
            push("einstein_k_skew", flag(e.is_k_skew(), "g(KX,KY) != -g(X,Y)"));
            push("einstein_g0_invariant", flag(e.is_g0_invariant(l), "metric not ad(g0)-invariant"));
            let s = e.signature();
            push(
                "einstein_neutral_signature",
                flag(
                    e.is_neutral() && 2 * s.positive == g.orbit_dimension(),
                    &format!("signature ({}, {}, {})", s.positive, s.negative, s.zero),
                ),
            );
        }
        Err(err) => {
            for name in ["einstein_symmetric", "einstein_k_skew", "einstein_g0_invariant", "einstein_neutral_signature"] {
                push(name, Err(err.to_string()));
            }
        }
    }
    out
}

/// Runs the gradation checks on a single gradation, returning failures.
pub fn gradation_failures(g: &Gradation, l: &LieAlgebraData) -> Vec<String> {
    check_gradation(g, l).into_iter().filter(|(_, _, ok)| !ok).map(|(n, c, _)| format!("{n}: {c}")).collect()
}

/// `[d, X_α] = deg(α) X_α` for the grading element `d`.
pub fn grading_action_ok(g: &Gradation, l: &LieAlgebraData) -> bool {
    let d = g.grading_element_in(l);
    (l.rank()..l.dim()).all(|p| {
        let x: AlgebraElement = l.basis(p);
        l.bracket(&d, &x) == x.scale(&rational::int(g.position_degree(l, p)))
    })
}
