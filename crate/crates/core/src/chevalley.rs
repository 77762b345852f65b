//! Chevalley basis of a complex simple Lie algebra.
//!
//! Basis order: `H_1..H_ℓ` (simple coroots), then `X_α` for the positive
//! roots in root-system order, then `X_{-α}` in the same order.
//!
//! Brackets:
//! - `[H_i, X_α] = α(H_i) X_α`
//! - `[X_α, X_{-α}] = H_α`, the coroot of `α` expanded in the `H_i`
//! - `[X_α, X_β] = N_{α,β} X_{α+β}` when `α+β` is a root
//!
//! The structure constants come from the extraspecial-pair construction:
//! for every non-simple positive root `ξ`, the special pair `(α, β)` with `α`
//! minimal in the root order gets `N_{α,β} = +(p+1)`; every other constant is
//! then forced by the standard relations between the `N`.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::KoszulError;
use crate::linalg::RationalMatrix;
use crate::rational::{self, Rational};
use crate::rootsys::{Root, RootId, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisIndex {
    /// Simple coroot `H_i`, 0-based.
    Cartan(usize),
    RootVector(Root),
}

/// Element of the Lie algebra in Chevalley-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    coords: Vec<Rational>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        Self { coords: vec![Rational::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = rational::one();
        e
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { coords: self.coords.iter().map(|a| a * s).collect() }
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// Sparse bracket of two basis vectors: `(basis position, coefficient)` pairs.
type SparseVec = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct LieAlgebraData {
    rs: RootSystem,
    /// `N_{r,s}` over all root ids, row-major `2N × 2N`; zero when `r+s ∉ R`.
    nconst: Vec<i64>,
    /// `H_α = Σ c_i H_i` for each positive root.
    coroots: Vec<Vec<i64>>,
    /// Root id of `r+s`, if it is a root.
    sums: Vec<Option<RootId>>,
    table: Vec<Vec<SparseVec>>,
    killing: OnceLock<Vec<i64>>,
}

impl LieAlgebraData {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.rs.dimension()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Basis position of `X_r`.
    pub fn root_position(&self, id: RootId) -> usize {
        self.rs.rank() + id
    }

    /// Root id of a basis position, `None` for Cartan positions.
    pub fn position_root(&self, pos: usize) -> Option<RootId> {
        pos.checked_sub(self.rs.rank())
    }

    pub fn basis_index(&self, pos: usize) -> BasisIndex {
        match self.position_root(pos) {
            None => BasisIndex::Cartan(pos),
            Some(id) => BasisIndex::RootVector(self.rs.root(id)),
        }
    }

    pub fn position_of(&self, idx: &BasisIndex) -> Option<usize> {
        match idx {
            BasisIndex::Cartan(i) => (*i < self.rank()).then_some(*i),
            BasisIndex::RootVector(r) => self.rs.root_id(r).map(|id| self.root_position(id)),
        }
    }

    pub fn basis(&self, pos: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), pos)
    }

    pub fn root_vector(&self, r: &Root) -> Option<AlgebraElement> {
        self.rs.root_id(r).map(|id| self.basis(self.root_position(id)))
    }

    /// `N_{α,β}`; zero when `α+β` is not a root.
    pub fn n(&self, a: RootId, b: RootId) -> i64 {
        self.nconst[a * 2 * self.rs.num_positive() + b]
    }

    pub fn root_sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a * 2 * self.rs.num_positive() + b]
    }

    /// Coefficients of `H_α` in the `H_i` basis (any root, either sign).
    pub fn coroot(&self, id: RootId) -> Vec<i64> {
        let n = self.rs.num_positive();
        if id < n {
            self.coroots[id].clone()
        } else {
            self.coroots[id - n].iter().map(|c| -c).collect()
        }
    }

    pub fn h_alpha(&self, id: RootId) -> AlgebraElement {
        let mut e = AlgebraElement::zero(self.dim());
        for (i, c) in self.coroot(id).into_iter().enumerate() {
            e.coords[i] = rational::int(c);
        }
        e
    }

    /// Bracket of two basis vectors as a sparse integer vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim());
        for (i, xi) in x.nonzero() {
            for (j, yj) in y.nonzero() {
                let entries = &self.table[i][j];
                if entries.is_empty() {
                    continue;
                }
                let w = xi * yj;
                for &(k, c) in entries {
                    out.coords[k] += &w * rational::int(c);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`; column `j` is `[x, b_j]`.
    pub fn ad_matrix(&self, x: &AlgebraElement) -> RationalMatrix {
        let dim = self.dim();
        let mut m = RationalMatrix::zeros(dim, dim);
        for (i, xi) in x.nonzero() {
            for j in 0..dim {
                for &(k, c) in &self.table[i][j] {
                    m[(k, j)] += xi * rational::int(c);
                }
            }
        }
        m
    }

    /// Gram matrix of the Killing form on the basis, `B_ij = tr(ad_i ad_j)`.
    pub fn killing_matrix(&self) -> &[i64] {
        self.killing.get_or_init(|| {
            let dim = self.dim();
            let mut b = vec![0i64; dim * dim];
            for i in 0..dim {
                for j in i..dim {
                    let mut tr = 0i64;
                    for m in 0..dim {
                        for &(k, c) in &self.table[j][m] {
                            for &(l, d) in &self.table[i][k] {
                                if l == m {
                                    tr += c * d;
                                }
                            }
                        }
                    }
                    b[i * dim + j] = tr;
                    b[j * dim + i] = tr;
                }
            }
            b
        })
    }

    pub fn killing_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> Rational {
        let dim = self.dim();
        let b = self.killing_matrix();
        let mut acc = Rational::zero();
        for (i, xi) in x.nonzero() {
            for (j, yj) in y.nonzero() {
                let v = b[i * dim + j];
                if v != 0 {
                    acc += xi * yj * rational::int(v);
                }
            }
        }
        acc
    }

    /// Killing form restricted to the Cartan subalgebra, in the `H_i` basis.
    pub fn cartan_killing(&self) -> RationalMatrix {
        let dim = self.dim();
        let b = self.killing_matrix();
        RationalMatrix::from_fn(self.rank(), self.rank(), |i, j| rational::int(b[i * dim + j]))
    }

    /// Whether `x` lies in the Cartan subalgebra.
    pub fn is_cartan(&self, x: &AlgebraElement) -> bool {
        x.coords[self.rank()..].iter().all(Zero::is_zero)
    }

    /// Cartan element `z` with `B(z, h) = ξ(h)` for every Cartan `h`.
    pub fn killing_dual(&self, xi: &crate::rootsys::Weight) -> Result<AlgebraElement, KoszulError> {
        if xi.len() != self.rank() {
            return Err(KoszulError::Dimension { expected: self.rank(), got: xi.len() });
        }
        // ξ(H_j) = Σ_i c_i α_i(H_j) = Σ_i c_i A_ij
        let values = self.rs.to_weight_basis(xi);
        let inv = self
            .cartan_killing()
            .inverse()
            .expect("Killing form is nondegenerate on the Cartan subalgebra");
        let z = inv.mul_vec(&values);
        let mut e = AlgebraElement::zero(self.dim());
        e.coords[..self.rank()].clone_from_slice(&z);
        Ok(e)
    }

    /// Evaluates a weight (as a linear form vanishing on root spaces).
    pub fn evaluate_weight(&self, xi: &crate::rootsys::Weight, x: &AlgebraElement) -> Rational {
        let values = self.rs.to_weight_basis(xi);
        rational::dot(&values, &x.coords[..self.rank()])
    }

    /// Copy of this algebra with the sign of one structure constant flipped.
    ///
    /// Exists so that verification code can be run against a known-bad
    /// algebra; the result violates the Jacobi identity.
    pub fn with_corrupted_constant(&self) -> Self {
        let n2 = 2 * self.rs.num_positive();
        let mut out = self.clone();
        if let Some(k) = (0..n2 * n2).find(|&k| out.nconst[k] != 0) {
            let (a, b) = (k / n2, k % n2);
            out.nconst[a * n2 + b] = -out.nconst[a * n2 + b];
            out.nconst[b * n2 + a] = -out.nconst[b * n2 + a];
        }
        out.table = bracket_table(&out.rs, &out.nconst, &out.coroots, &out.sums);
        out.killing = OnceLock::new();
        out
    }
}

/// Builds the Chevalley basis data for a root system.
pub fn chevalley_constants(rs: &RootSystem) -> LieAlgebraData {
    let n = rs.num_positive();
    let n2 = 2 * n;
    let roots: Vec<Root> = (0..n2).map(|id| rs.root(id)).collect();
    let mut sums = vec![None; n2 * n2];
    for a in 0..n2 {
        for b in 0..n2 {
            sums[a * n2 + b] = rs.root_id(&roots[a].add(&roots[b]));
        }
    }
    let norms: Vec<i64> = roots.iter().map(|r| rs.root_norm(r)).collect();
    let coroots: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|r| {
            let nr = rs.root_norm(r);
            (0..rs.rank())
                .map(|i| {
                    let v = r.coeffs()[i] * rs.gram()[i][i];
                    debug_assert_eq!(v % nr, 0);
                    v / nr
                })
                .collect()
        })
        .collect();
    let nconst = structure_constants(rs, &sums, &norms);
    let table = bracket_table(rs, &nconst, &coroots, &sums);
    LieAlgebraData { rs: rs.clone(), nconst, coroots, sums, table, killing: OnceLock::new() }
}

/// Largest `p` with `β - pα ∈ R`.
pub fn string_below(rs: &RootSystem, alpha: &Root, beta: &Root) -> i64 {
    let mut p = 0;
    let mut probe = beta.sub(alpha);
    while rs.is_root(&probe) {
        p += 1;
        probe = probe.sub(alpha);
    }
    p
}

fn structure_constants(rs: &RootSystem, sums: &[Option<RootId>], norms: &[i64]) -> Vec<i64> {
    let n = rs.num_positive();
    let n2 = 2 * n;
    let neg = |id: RootId| if id < n { id + n } else { id - n };
    let sum = |a: RootId, b: RootId| sums[a * n2 + b];
    // N on pairs of positive roots, filled by increasing height of the sum
    let mut pos = vec![0i64; n * n];

    // N_{r,s} for arbitrary signs, reduced to positive pairs with
    // N_{-r,-s} = -N_{r,s} and N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s) for r+s+t = 0.
    let general = |pos: &[i64], r: RootId, s: RootId| -> i64 {
        let t = match sum(r, s) {
            Some(x) => neg(x),
            None => return 0,
        };
        let (rp, sp, tp) = (r < n, s < n, t < n);
        if rp && sp {
            return pos[r * n + s];
        }
        if !rp && !sp {
            return -pos[neg(r) * n + neg(s)];
        }
        let direct = |a: RootId, b: RootId| -> i64 {
            if a < n {
                pos[a * n + b]
            } else {
                -pos[neg(a) * n + neg(b)]
            }
        };
        let (num, den) = if sp == tp {
            (norms[t] * direct(s, t), norms[r])
        } else {
            (norms[t] * direct(t, r), norms[s])
        };
        debug_assert_eq!(num % den, 0);
        num / den
    };

    for xi in 0..n {
        let mut pairs = Vec::new();
        for g in 0..n {
            for d in g + 1..n {
                if sum(g, d) == Some(xi) {
                    pairs.push((g, d));
                }
            }
        }
        let Some(&(a, b)) = pairs.first() else {
            continue;
        };
        let p = string_below(rs, &rs.root(a), &rs.root(b));
        let nab = p + 1;
        pos[a * n + b] = nab;
        pos[b * n + a] = -nab;
        for &(g, d) in &pairs[1..] {
            // four-root relation with r = γ, s = δ, t = -α, u = -β
            let mut acc = Rational::zero();
            if let Some(e) = sum(d, neg(a)) {
                let num = general(&pos, d, neg(a)) * general(&pos, g, neg(b));
                acc += rational::frac(num, norms[e]);
            }
            if let Some(e) = sum(g, neg(a)) {
                let num = general(&pos, neg(a), g) * general(&pos, d, neg(b));
                acc += rational::frac(num, norms[e]);
            }
            let val = acc * rational::int(norms[xi]) / rational::int(nab);
            let val = rational::to_i64(&val).expect("structure constants are integers");
            pos[g * n + d] = val;
            pos[d * n + g] = -val;
        }
    }

    let mut all = vec![0i64; n2 * n2];
    for r in 0..n2 {
        for s in 0..n2 {
            all[r * n2 + s] = general(&pos, r, s);
        }
    }
    all
}

fn bracket_table(
    rs: &RootSystem,
    nconst: &[i64],
    coroots: &[Vec<i64>],
    sums: &[Option<RootId>],
) -> Vec<Vec<SparseVec>> {
    let rank = rs.rank();
    let n = rs.num_positive();
    let n2 = 2 * n;
    let dim = rank + n2;
    let roots: Vec<Root> = (0..n2).map(|id| rs.root(id)).collect();
    let mut table = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let entry = match (i.checked_sub(rank), j.checked_sub(rank)) {
                (None, None) => Vec::new(),
                (None, Some(s)) => {
                    let v = rs.coroot_pairing(&roots[s], i);
                    if v == 0 { Vec::new() } else { vec![(j, v)] }
                }
                (Some(r), None) => {
                    let v = rs.coroot_pairing(&roots[r], j);
                    if v == 0 { Vec::new() } else { vec![(i, -v)] }
                }
                (Some(r), Some(s)) => {
                    if s == (r + n) % n2 {
                        let sign = if r < n { 1 } else { -1 };
                        coroots[r % n]
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| **c != 0)
                            .map(|(k, c)| (k, sign * c))
                            .collect()
                    } else if let Some(t) = sums[r * n2 + s] {
                        vec![(rank + t, nconst[r * n2 + s])]
                    } else {
                        Vec::new()
                    }
                }
            };
            table[i][j] = entry;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::rootsys::{Family, SimpleType};

    fn alg(f: Family, r: usize) -> LieAlgebraData {
        chevalley_constants(&RootSystem::build(SimpleType::new(f, r).unwrap()))
    }

    #[test]
    fn sl2() {
        let l = alg(Family::A, 1);
        assert_eq!(l.dim(), 3);
        let x = l.basis(1);
        let y = l.basis(2);
        assert_eq!(l.bracket(&x, &y), l.basis(0));
        // [H, X] = 2X
        assert_eq!(l.bracket(&l.basis(0), &x), x.scale(&int(2)));
        assert_eq!(l.killing_form(&l.basis(0), &l.basis(0)), int(8));
        assert_eq!(l.killing_form(&x, &y), int(4));
        assert_eq!(l.killing_form(&x, &x), int(0));
        let h = l.basis(0);
        assert_eq!(l.ad_matrix(&h).mul(&l.ad_matrix(&h)).trace(), int(8));
    }

    #[test]
    fn a2_constants() {
        let l = alg(Family::A, 2);
        let rs = l.root_system();
        let a1 = rs.root_id(&Root(vec![1, 0])).unwrap();
        let a2 = rs.root_id(&Root(vec![0, 1])).unwrap();
        assert_eq!(l.n(a1, a2).abs(), 1);
        let br = l.bracket(&l.basis(l.root_position(a1)), &l.basis(l.root_position(a2)));
        let s = l.root_vector(&Root(vec![1, 1])).unwrap();
        assert!(br == s || br == s.scale(&int(-1)));
    }

    #[test]
    fn g2_string_constant() {
        let l = alg(Family::G, 2);
        let rs = l.root_system();
        let a1 = rs.root_id(&Root(vec![1, 0])).unwrap();
        let b = rs.root_id(&Root(vec![1, 1])).unwrap();
        assert_eq!(l.n(a1, b).abs(), 2);
    }

    #[test]
    fn antisymmetry_and_cartan_abelian() {
        let l = alg(Family::B, 3);
        let dim = l.dim();
        for i in 0..dim {
            assert!(l.bracket(&l.basis(i), &l.basis(i)).is_zero());
            for j in 0..dim {
                let a = l.bracket(&l.basis(i), &l.basis(j));
                let b = l.bracket(&l.basis(j), &l.basis(i));
                assert_eq!(a, b.scale(&int(-1)));
            }
        }
        for i in 0..l.rank() {
            for j in 0..l.rank() {
                assert!(l.bracket(&l.basis(i), &l.basis(j)).is_zero());
            }
        }
    }

    #[test]
    fn ad_of_cartan_is_diagonal() {
        let l = alg(Family::G, 2);
        let h = l.basis(0).add(&l.basis(1).scale(&int(3)));
        let m = l.ad_matrix(&h);
        let rs = l.root_system();
        for id in 0..2 * rs.num_positive() {
            let p = l.root_position(id);
            let r = rs.root(id);
            let expected = rs.coroot_pairing(&r, 0) + 3 * rs.coroot_pairing(&r, 1);
            assert_eq!(m[(p, p)], int(expected));
        }
        let mut off = m.clone();
        for i in 0..l.dim() {
            off[(i, i)] = Rational::zero();
        }
        assert!(off.is_zero());
        assert!(l.ad_matrix(&AlgebraElement::zero(l.dim())).is_zero());
    }

    #[test]
    fn killing_dual_pairs_back() {
        let l = alg(Family::C, 3);
        let xi = l.root_system().fundamental_weight(2).scale(&int(3));
        let z = l.killing_dual(&xi).unwrap();
        assert!(l.is_cartan(&z));
        for i in 0..l.rank() {
            assert_eq!(l.killing_form(&z, &l.basis(i)), l.evaluate_weight(&xi, &l.basis(i)));
        }
    }
}
