//! Koszul form, its differential, and the invariant Einstein metric.
//!
//! Two-forms on `𝔤` are stored by their coefficients `c_α` in
//! `ρ = Σ_{α∈R⁺} c_α ω^α∧ω^{-α}`, with `ρ(X_α, X_{-α}) = c_α`. The differential
//! of a 1-form is taken as `dξ(X, Y) = ξ([X, Y])`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::chevalley::{AlgebraElement, BasisIndex, LieAlgebraData};
use crate::error::{KoszulError, RootSystemError};
use crate::gradation::Gradation;
use crate::linalg::{RationalMatrix, Signature};
use crate::rational::{self, Rational};
use crate::rootsys::{Root, RootId, RootSystem, Weight};

/// Sum of a set of positive roots, in simple-root coordinates.
pub fn delta_sum(rs: &RootSystem, subset: &[Root]) -> Result<Weight, RootSystemError> {
    let mut acc = Weight::zero(rs.rank());
    for r in subset {
        if r.coeffs().len() != rs.rank() {
            return Err(RootSystemError::Dimension { expected: rs.rank(), got: r.coeffs().len() });
        }
        match rs.root_id(r) {
            Some(id) if rs.is_positive_id(id) => acc = acc.add(&r.to_weight()),
            Some(_) => return Err(RootSystemError::NotPositive(r.to_string())),
            None => return Err(RootSystemError::NotARoot(r.to_string())),
        }
    }
    Ok(acc)
}

fn roots_of(rs: &RootSystem, ids: &[RootId]) -> Vec<Root> {
    ids.iter().map(|&i| rs.root(i)).collect()
}

/// `δ^𝔥`, the sum of positive roots of degree zero.
pub fn delta_h(g: &Gradation) -> Weight {
    let rs = g.root_system();
    delta_sum(rs, &roots_of(rs, &g.zero_roots())).expect("degree-zero roots are positive roots")
}

/// `ψ = 2(δ^𝔤 - δ^𝔥)`.
pub fn koszul_form(g: &Gradation) -> Weight {
    let rs = g.root_system();
    let dg = delta_sum(rs, rs.positive_roots()).expect("positive roots");
    dg.sub(&delta_h(g)).scale(&rational::int(2))
}

/// `a_i = 2 + b_i` for a crossed node `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KoszulCoefficient {
    pub a: i64,
    pub b: i64,
}

/// Coefficients keyed by 0-based crossed node, with `ψ = 2 Σ a_i π_i`.
pub fn koszul_coefficients(g: &Gradation) -> BTreeMap<usize, KoszulCoefficient> {
    let rs = g.root_system();
    let dh = delta_h(g);
    g.crossing()
        .nodes()
        .map(|i| {
            // b_i = -2(δ^𝔥, α_i)/(α_i, α_i) = -δ^𝔥(H_i)
            let b = -rational::to_i64(&rs.to_weight_basis(&dh)[i]).expect("Cartan integers are integral");
            (i, KoszulCoefficient { a: 2 + b, b })
        })
        .collect()
}

/// `ψ(x) = -tr_{𝔪}(ad_{K̃x} - K̃ ad_x)`, by explicit matrix traces.
///
/// `K̃` acts by the sign of the degree on root vectors and by zero on `𝔤₀`;
/// the trace runs over the root vectors of nonzero degree.
pub fn koszul_trace(g: &Gradation, l: &LieAlgebraData, x: &AlgebraElement) -> Rational {
    let dim = l.dim();
    let sign: Vec<i64> = (0..dim).map(|p| g.position_degree(l, p).signum()).collect();
    let kx = AlgebraElement::from_coords(
        x.coords().iter().zip(&sign).map(|(c, &s)| c * rational::int(s)).collect(),
    );
    let ad_kx = l.ad_matrix(&kx);
    let ad_x = l.ad_matrix(x);
    let k = RationalMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            rational::int(sign[i])
        } else {
            rational::zero()
        }
    });
    let k_ad = k.mul(&ad_x);
    let mut tr = rational::zero();
    for p in (0..dim).filter(|&p| sign[p] != 0) {
        tr += &ad_kx[(p, p)] - &k_ad[(p, p)];
    }
    -tr
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm {
    /// Indexed by positive [`RootId`].
    coeffs: Vec<Rational>,
}

impl TwoForm {
    pub fn zero(num_positive: usize) -> Self {
        Self { coeffs: vec![rational::zero(); num_positive] }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, id: RootId) -> &Rational {
        &self.coeffs[id]
    }

    pub fn get(&self, rs: &RootSystem, r: &Root) -> Option<&Rational> {
        rs.root_id(r).filter(|&id| rs.is_positive_id(id)).map(|id| &self.coeffs[id])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `(root, c_α)` pairs in root order.
    pub fn entries(&self, rs: &RootSystem) -> Vec<(Root, Rational)> {
        rs.positive_roots().iter().cloned().zip(self.coeffs.iter().cloned()).collect()
    }

    /// Value on a pair of basis positions.
    pub fn evaluate_basis(&self, l: &LieAlgebraData, i: usize, j: usize) -> Rational {
        let n = self.coeffs.len();
        match (l.position_root(i), l.position_root(j)) {
            (Some(a), Some(b)) if a < n && b == a + n => self.coeffs[a].clone(),
            (Some(a), Some(b)) if b < n && a == b + n => -self.coeffs[b].clone(),
            _ => rational::zero(),
        }
    }

    pub fn evaluate(&self, l: &LieAlgebraData, x: &AlgebraElement, y: &AlgebraElement) -> Rational {
        let n = self.coeffs.len();
        let mut acc = rational::zero();
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (p, q) = (l.root_position(a), l.root_position(a + n));
            let (xp, xq) = (&x.coords()[p], &x.coords()[q]);
            let (yp, yq) = (&y.coords()[p], &y.coords()[q]);
            acc += c * (xp * yq - xq * yp);
        }
        acc
    }

    /// Gram matrix `ρ(b_i, b_j)` over the full basis.
    pub fn gram(&self, l: &LieAlgebraData) -> RationalMatrix {
        RationalMatrix::from_fn(l.dim(), l.dim(), |i, j| self.evaluate_basis(l, i, j))
    }
}

/// `dξ = Σ n(ξ,α) ω^α∧ω^{-α}`.
pub fn two_form_from_weight(rs: &RootSystem, xi: &Weight) -> Result<TwoForm, RootSystemError> {
    if xi.len() != rs.rank() {
        return Err(RootSystemError::Dimension { expected: rs.rank(), got: xi.len() });
    }
    rs.positive_roots()
        .iter()
        .map(|r| rs.n_pairing(xi, r))
        .collect::<Result<Vec<_>, _>>()
        .map(TwoForm::from_coeffs)
}

/// `ρ = dψ` for a gradation.
pub fn rho(g: &Gradation) -> TwoForm {
    two_form_from_weight(g.root_system(), &koszul_form(g)).expect("ψ has the right length")
}

/// Kernel of a two-form: the Cartan subalgebra plus `X_{±α}` with `c_α = 0`.
pub fn kernel_of(f: &TwoForm, l: &LieAlgebraData) -> Vec<BasisIndex> {
    let rs = l.root_system();
    let n = rs.num_positive();
    let mut out: Vec<BasisIndex> = (0..rs.rank()).map(BasisIndex::Cartan).collect();
    for sign in [false, true] {
        for a in 0..n {
            if f.coeff(a).is_zero() {
                out.push(BasisIndex::RootVector(rs.root(if sign { a + n } else { a })));
            }
        }
    }
    out.sort_by_key(|b| l.position_of(b));
    out
}

/// Basis positions spanning the kernel, as computed by [`kernel_of`].
pub fn kernel_positions(f: &TwoForm, l: &LieAlgebraData) -> Vec<usize> {
    kernel_of(f, l).iter().map(|b| l.position_of(b).expect("kernel indices are basis indices")).collect()
}

/// Whether the kernel is exactly `𝔤₀`.
pub fn kernel_is_g0(f: &TwoForm, g: &Gradation, l: &LieAlgebraData) -> bool {
    let g0: Vec<usize> = (0..l.dim()).filter(|&p| g.in_g0(l, p)).collect();
    kernel_positions(f, l) == g0
}

/// `ω_z(X, Y) = B(z, [X, Y])`, so `c_α = B(z, H_α)`.
pub fn omega_z(l: &LieAlgebraData, z: &AlgebraElement) -> Result<TwoForm, KoszulError> {
    if z.dim() != l.dim() {
        return Err(KoszulError::Dimension { expected: l.dim(), got: z.dim() });
    }
    if !l.is_cartan(z) {
        return Err(KoszulError::NotCartan);
    }
    let n = l.root_system().num_positive();
    Ok(TwoForm::from_coeffs((0..n).map(|a| l.killing_form(z, &l.h_alpha(a))).collect()))
}

/// Invariant para-Kähler Einstein structure `(K, λρ)` with metric `λ⁻¹ρ∘K` on `𝔪`.
#[derive(Debug, Clone)]
pub struct EinsteinStructure {
    gradation: Gradation,
    lambda: Rational,
    /// Basis positions of `𝔪`, in basis order.
    basis: Vec<usize>,
    /// `+1` on `𝔪⁺`, `-1` on `𝔪⁻`, aligned with `basis`.
    k: Vec<i64>,
    metric: RationalMatrix,
    rho: TwoForm,
}

pub fn einstein_structure(
    g: &Gradation,
    l: &LieAlgebraData,
    lambda: &Rational,
) -> Result<EinsteinStructure, KoszulError> {
    if lambda.is_zero() {
        return Err(KoszulError::ZeroLambda);
    }
    let rho = rho(g);
    let basis: Vec<usize> = (0..l.dim()).filter(|&p| !g.in_g0(l, p)).collect();
    let k: Vec<i64> = basis.iter().map(|&p| g.position_degree(l, p).signum()).collect();
    let inv = lambda.recip();
    let m = basis.len();
    let metric = RationalMatrix::from_fn(m, m, |i, j| {
        // ρ(X, KY) with K Y = k_j Y
        &inv * rho.evaluate_basis(l, basis[i], basis[j]) * rational::int(k[j])
    });
    Ok(EinsteinStructure { gradation: g.clone(), lambda: lambda.clone(), basis, k, metric, rho })
}

impl EinsteinStructure {
    pub fn gradation(&self) -> &Gradation {
        &self.gradation
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn metric(&self) -> &RationalMatrix {
        &self.metric
    }

    pub fn rho(&self) -> &TwoForm {
        &self.rho
    }

    pub fn is_symmetric(&self) -> bool {
        self.metric.is_symmetric()
    }

    /// `g(KX, KY) = -g(X, Y)` on all basis pairs.
    pub fn is_k_skew(&self) -> bool {
        let m = self.basis.len();
        (0..m).all(|i| {
            (0..m).all(|j| {
                let lhs = &self.metric[(i, j)] * rational::int(self.k[i] * self.k[j]);
                lhs == -self.metric[(i, j)].clone()
            })
        })
    }

    /// `g([h,X],Y) + g(X,[h,Y]) = 0` for every basis element `h` of `𝔤₀`.
    pub fn is_g0_invariant(&self, l: &LieAlgebraData) -> bool {
        let dim = l.dim();
        let local: Vec<Option<usize>> = {
            let mut v = vec![None; dim];
            for (i, &p) in self.basis.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        // ad_h restricted to 𝔪, as a sparse map i ↦ [(j, c)]
        let g0: Vec<usize> = (0..dim).filter(|&p| self.gradation.in_g0(l, p)).collect();
        g0.iter().all(|&h| {
            let m = self.basis.len();
            let mut ad = RationalMatrix::zeros(m, m);
            for (j, &p) in self.basis.iter().enumerate() {
                for &(q, c) in l.basis_bracket(h, p) {
                    match local[q] {
                        Some(i) => ad[(i, j)] += rational::int(c),
                        None => return false,
                    }
                }
            }
            // adᵀ G + G ad = 0
            let lhs = ad.transpose().mul(&self.metric);
            let rhs = self.metric.mul(&ad);
            (0..m).all(|i| (0..m).all(|j| (&lhs[(i, j)] + &rhs[(i, j)]).is_zero()))
        })
    }

    pub fn signature(&self) -> Signature {
        self.metric.signature()
    }

    pub fn is_neutral(&self) -> bool {
        let s = self.signature();
        s.zero == 0 && s.positive == s.negative && s.positive * 2 == self.basis.len()
    }

    /// Metric pairing `g(X_α, X_{-α})` for a positive root of nonzero degree.
    pub fn pairing(&self, l: &LieAlgebraData, alpha: RootId) -> Option<Rational> {
        let n = l.root_system().num_positive();
        let i = self.basis.iter().position(|&p| l.position_root(p) == Some(alpha))?;
        let j = self.basis.iter().position(|&p| l.position_root(p) == Some(alpha + n))?;
        Some(self.metric[(i, j)].clone())
    }
}

/// `ρ(𝔤_i, 𝔤_j) = 0` unless `i + j = 0`, checked on basis pairs.
pub fn is_type_11(f: &TwoForm, g: &Gradation, l: &LieAlgebraData) -> bool {
    let dim = l.dim();
    (0..dim).all(|i| {
        (0..dim).all(|j| {
            g.position_degree(l, i) + g.position_degree(l, j) == 0 || f.evaluate_basis(l, i, j).is_zero()
        })
    })
}

/// `n(ψ, α) > 0` on every root of `𝔪⁺`.
pub fn is_positive_on_nilradical(f: &TwoForm, g: &Gradation) -> bool {
    g.nilradical_roots().iter().all(|&a| f.coeff(a).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::chevalley_constants;
    use crate::gradation::{grade_from_crossing, CrossingSet};
    use crate::rootsys::{Family, SimpleType};

    fn setup(f: Family, r: usize, crossed: &[usize]) -> (Gradation, LieAlgebraData) {
        let rs = RootSystem::build(SimpleType::new(f, r).unwrap());
        let l = chevalley_constants(&rs);
        let g = grade_from_crossing(&rs, &CrossingSet::from_one_based(r, crossed).unwrap()).unwrap();
        (g, l)
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.iter().map(|&x| rational::int(x)).collect())
    }

    fn ints(f: &TwoForm) -> Vec<i64> {
        f.coeffs().iter().map(|c| rational::to_i64(c).unwrap()).collect()
    }

    #[test]
    fn delta_sums() {
        let (g, _) = setup(Family::G, 2, &[1]);
        let rs = g.root_system();
        assert_eq!(delta_sum(rs, rs.positive_roots()).unwrap(), w(&[10, 6]));
        assert_eq!(delta_h(&g), w(&[0, 1]));
        assert!(delta_sum(rs, &[Root(vec![-1, 0])]).is_err());
        assert!(delta_sum(rs, &[Root(vec![2, 2])]).is_err());
    }

    #[test]
    fn g2_case_one() {
        let (g, _) = setup(Family::G, 2, &[1]);
        assert_eq!(koszul_form(&g), w(&[20, 10]));
        let c = koszul_coefficients(&g);
        assert_eq!(c[&0], KoszulCoefficient { a: 5, b: 3 });
        assert_eq!(ints(&rho(&g)), vec![10, 0, 10, 20, 10, 10]);
    }

    #[test]
    fn g2_case_two() {
        let (g, _) = setup(Family::G, 2, &[2]);
        assert_eq!(koszul_form(&g), w(&[18, 12]));
        assert_eq!(koszul_coefficients(&g)[&1], KoszulCoefficient { a: 3, b: 1 });
        assert_eq!(ints(&rho(&g)), vec![0, 6, 18, 18, 6, 12]);
    }

    #[test]
    fn a_series_small() {
        let (g, _) = setup(Family::A, 3, &[2]);
        assert_eq!(koszul_form(&g), w(&[4, 8, 4]));
        assert_eq!(koszul_coefficients(&g)[&1], KoszulCoefficient { a: 4, b: 2 });
        let (g, _) = setup(Family::A, 1, &[1]);
        assert_eq!(koszul_form(&g), w(&[2]));
    }

    #[test]
    fn trace_matches_weight_formula_g2() {
        let (g, l) = setup(Family::G, 2, &[1]);
        let psi = koszul_form(&g);
        let d = g.grading_element_in(&l);
        assert_eq!(koszul_trace(&g, &l, &d), l.evaluate_weight(&psi, &d));
        assert_eq!(koszul_trace(&g, &l, &AlgebraElement::zero(l.dim())), rational::zero());
        for p in l.rank()..l.dim() {
            assert!(koszul_trace(&g, &l, &l.basis(p)).is_zero());
        }
    }

    #[test]
    fn kernels() {
        let (g, l) = setup(Family::G, 2, &[1]);
        assert!(kernel_is_g0(&rho(&g), &g, &l));
        assert_eq!(kernel_of(&TwoForm::zero(6), &l).len(), 14);
        let (_, l) = setup(Family::A, 2, &[1]);
        let rs = l.root_system();
        let f = two_form_from_weight(rs, &rs.fundamental_weight(0)).unwrap();
        let k = kernel_of(&f, &l);
        assert!(k.contains(&BasisIndex::RootVector(Root(vec![0, 1]))));
        assert!(k.contains(&BasisIndex::RootVector(Root(vec![0, -1]))));
    }

    #[test]
    fn omega_z_values() {
        let (g, l) = setup(Family::A, 1, &[1]);
        assert_eq!(omega_z(&l, &l.basis(0)).unwrap().coeffs(), &[rational::int(8)]);
        assert!(omega_z(&l, &AlgebraElement::zero(3)).unwrap().is_zero());
        assert_eq!(omega_z(&l, &l.basis(1)), Err(KoszulError::NotCartan));
        let z = l.killing_dual(&koszul_form(&g)).unwrap();
        assert_eq!(omega_z(&l, &z).unwrap(), rho(&g));
    }

    #[test]
    fn einstein_a1() {
        let (g, l) = setup(Family::A, 1, &[1]);
        let e = einstein_structure(&g, &l, &rational::one()).unwrap();
        assert_eq!(e.metric().rows(), 2);
        let s = e.signature();
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        assert!(einstein_structure(&g, &l, &rational::zero()).is_err());
    }

    #[test]
    fn einstein_g2_properties() {
        let (g, l) = setup(Family::G, 2, &[1]);
        let e = einstein_structure(&g, &l, &rational::one()).unwrap();
        assert_eq!(e.metric().rows(), 10);
        assert!(e.is_symmetric() && e.is_k_skew() && e.is_neutral() && e.is_g0_invariant(&l));
        let r = rho(&g);
        for a in g.nilradical_roots() {
            assert_eq!(e.pairing(&l, a).unwrap(), -r.coeff(a).clone());
        }
        let e2 = einstein_structure(&g, &l, &rational::int(2)).unwrap();
        assert_eq!(e2.metric(), &e.metric().scale(&rational::frac(1, 2)));
        assert!(is_type_11(&r, &g, &l));
        assert!(is_positive_on_nilradical(&r, &g));
    }
}
