//! Root systems of the complex simple Lie algebras A–G.
//!
//! Conventions:
//! - Bourbaki node numbering for every family.
//! - Cartan matrix `A[i][j] = 2(α_i, α_j)/(α_j, α_j)`, so that `α_i(H_j) = A[i][j]`.
//! - The invariant inner product is scaled so that short roots have squared length 2.
//! - Positive roots are ordered by height, then by coefficient vector in
//!   descending lexicographic order (simple roots come out in node order).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::RootSystemError;
use crate::linalg::RationalMatrix;
use crate::rational::{self, Rational};

/// Upper bound on the rank of the algebras this crate constructs.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn admits(self, rank: usize) -> bool {
        match self {
            Family::A => (1..=MAX_RANK).contains(&rank),
            Family::B | Family::C => (2..=MAX_RANK).contains(&rank),
            Family::D => (3..=MAX_RANK).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl FromStr for Family {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootSystemError::UnknownFamily(s.to_string())),
        }
    }
}

/// A simple type `X_rank`, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        if family.admits(rank) {
            Ok(Self { family, rank })
        } else {
            Err(RootSystemError::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every valid simple type with rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank.min(MAX_RANK) {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Symmetric Gram matrix `(α_i, α_j)` of the simple roots.
    fn gram(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n.saturating_sub(1) {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    g[i][i] = 4;
                }
                g[n - 1][n - 1] = 2;
                for i in 0..n - 1 {
                    link(&mut g, i, i + 1, -2);
                }
            }
            Family::C => {
                for i in 0..n - 1 {
                    g[i][i] = 2;
                }
                g[n - 1][n - 1] = 4;
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 3, n - 1, -1);
            }
            Family::E => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                link(&mut g, 0, 2, -1);
                link(&mut g, 1, 3, -1);
                for i in 2..n - 1 {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Family::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            Family::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSystemError;
    /// Accepts `G2`, `g2`, `A 3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| RootSystemError::UnknownFamily(s.into()))?;
        let family: Family = letter.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| RootSystemError::UnknownFamily(s.into()))?;
        SimpleType::new(family, rank)
    }
}

/// Integer coordinates `k_i` of `Σ k_i α_i` in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&k| k >= 0) && self.0.iter().any(|&k| k > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|k| -k).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&k| rational::int(k)).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_combination(self.0.iter().map(|&k| rational::int(k))))
    }
}

/// Rational vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![rational::zero(); rank])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(num_traits::Zero::is_zero)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * s).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_combination(self.0.iter().cloned()))
    }
}

/// `2a1+1a2` style rendering; `0` for the zero vector.
pub fn render_combination(coeffs: impl IntoIterator<Item = Rational>) -> render::Combination {
    render::Combination::new(coeffs, "a")
}

pub mod render {
    use num_traits::{Signed, Zero};

    use crate::rational::{self, Rational};

    /// A basis expansion rendered as text, e.g. `2a1+1a2` or `10p1`.
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct Combination(String);

    impl Combination {
        pub fn new(coeffs: impl IntoIterator<Item = Rational>, symbol: &str) -> Self {
            let mut s = String::new();
            for (i, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if c.is_negative() {
                    s.push('-');
                } else if !s.is_empty() {
                    s.push('+');
                }
                s.push_str(&rational::render(&c.abs()));
                s.push_str(symbol);
                s.push_str(&(i + 1).to_string());
            }
            if s.is_empty() {
                s.push('0');
            }
            Combination(s)
        }
    }

    impl std::ops::Deref for Combination {
        type Target = str;
        fn deref(&self) -> &str {
            &self.0
        }
    }

    impl std::fmt::Display for Combination {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            f.write_str(&self.0)
        }
    }
}

/// Index into the full root set: `0..N` are the positive roots in order,
/// `N..2N` their negatives in the same order.
pub type RootId = usize;

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    positive: Vec<Root>,
    lookup: HashMap<Root, RootId>,
    weights: RationalMatrix,
}

impl RootSystem {
    pub fn build(ty: SimpleType) -> Self {
        let gram = ty.gram();
        let n = ty.rank();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let symmetrizer = (0..n).map(|i| gram[i][i] / 2).collect();
        let positive = positive_roots(&cartan);
        let count = positive.len();
        let mut lookup = HashMap::with_capacity(2 * count);
        for (i, r) in positive.iter().enumerate() {
            lookup.insert(r.clone(), i);
            lookup.insert(r.neg(), i + count);
        }
        let weights = RationalMatrix::from_i64(&cartan)
            .inverse()
            .expect("Cartan matrix of a simple type is invertible");
        Self { ty, cartan, gram, symmetrizer, positive, lookup, weights }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(α_i, α_j)` with short roots of squared length 2.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `d_i = (α_i, α_i)/2`; `A·diag(d)` is symmetric.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Dimension of the Lie algebra, `rank + |R|`.
    pub fn dimension(&self) -> usize {
        self.rank() + 2 * self.positive.len()
    }

    pub fn root(&self, id: RootId) -> Root {
        let n = self.positive.len();
        if id < n {
            self.positive[id].clone()
        } else {
            self.positive[id - n].neg()
        }
    }

    pub fn root_id(&self, r: &Root) -> Option<RootId> {
        self.lookup.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.lookup.contains_key(r)
    }

    pub fn negate_id(&self, id: RootId) -> RootId {
        let n = self.positive.len();
        if id < n {
            id + n
        } else {
            id - n
        }
    }

    pub fn is_positive_id(&self, id: RootId) -> bool {
        id < self.positive.len()
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("root systems are nonempty")
    }

    /// Rows are the fundamental weights `π_i` in simple-root coordinates (the
    /// inverse Cartan matrix).
    pub fn weight_matrix(&self) -> &RationalMatrix {
        &self.weights
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        (0..self.rank()).map(|i| Weight(self.weights.row(i).to_vec())).collect()
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight(self.weights.row(i).to_vec())
    }

    /// Symmetric bilinear form on weights.
    pub fn inner_product(&self, xi: &Weight, eta: &Weight) -> Result<Rational, RootSystemError> {
        self.check_len(xi.len())?;
        self.check_len(eta.len())?;
        let n = self.rank();
        let mut acc = rational::zero();
        for i in 0..n {
            if num_traits::Zero::is_zero(&xi.0[i]) {
                continue;
            }
            for j in 0..n {
                if self.gram[i][j] != 0 {
                    acc += &xi.0[i] * &eta.0[j] * rational::int(self.gram[i][j]);
                }
            }
        }
        Ok(acc)
    }

    /// Squared length of a root (an integer in this normalization).
    pub fn root_norm(&self, r: &Root) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            for j in 0..n {
                acc += r.0[i] * r.0[j] * self.gram[i][j];
            }
        }
        acc
    }

    /// Integer inner product of two roots.
    pub fn root_inner(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            for j in 0..n {
                acc += a.0[i] * b.0[j] * self.gram[i][j];
            }
        }
        acc
    }

    /// `n(ξ, α) = 2(ξ, α)/(α, α)`.
    pub fn n_pairing(&self, xi: &Weight, alpha: &Root) -> Result<Rational, RootSystemError> {
        if alpha.0.len() != self.rank() || !self.is_root(alpha) {
            return Err(RootSystemError::NotARoot(alpha.to_string()));
        }
        let ip = self.inner_product(xi, &alpha.to_weight())?;
        Ok(ip * rational::int(2) / rational::int(self.root_norm(alpha)))
    }

    /// Coordinates of `ξ` in the fundamental-weight basis: `m_j = n(ξ, α_j)`.
    pub fn to_weight_basis(&self, xi: &Weight) -> Vec<Rational> {
        RationalMatrix::from_i64(&self.cartan).vec_mul(&xi.0)
    }

    /// `⟨α, α_i^∨⟩ = α(H_i)` for a root given by coefficients.
    pub fn coroot_pairing(&self, r: &Root, i: usize) -> i64 {
        r.0.iter().enumerate().map(|(j, k)| k * self.cartan[j][i]).sum()
    }

    fn check_len(&self, got: usize) -> Result<(), RootSystemError> {
        if got == self.rank() {
            Ok(())
        } else {
            Err(RootSystemError::Dimension { expected: self.rank(), got })
        }
    }
}

/// Positive roots by string closure from the simple roots.
///
/// For a positive root `β` and a simple root `α_i`, the `α_i`-string through
/// `β` runs from `β - pα_i` to `β + qα_i` with `p - q = ⟨β, α_i^∨⟩`. Since `p`
/// only involves lower heights it is known when `β` is processed.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut found: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut levels: Vec<Vec<Vec<i64>>> = vec![(0..n).map(|i| Root::simple(n, i).0).collect()];
    for r in &levels[0] {
        found.insert(r.clone());
    }
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in levels.last().unwrap() {
            for i in 0..n {
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if found.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let q = p - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for r in &next {
            found.insert(r.clone());
        }
        levels.push(next);
    }
    let mut all: Vec<Root> = levels.into_iter().flatten().map(Root).collect();
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    all
}
