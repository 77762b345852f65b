//! Fundamental gradations from crossed Dynkin diagrams, and their
//! compatibility with real forms given by Satake diagrams.
//!
//! A crossing set `Π¹ ⊂ Π` defines the grading element `d` by `α_i(d) = 1`
//! for crossed nodes and `0` otherwise, so `deg α = Σ_{i∈Π¹} k_i` for
//! `α = Σ k_i α_i`. The invariant para-complex structure `K` is the sign of the
//! degree on root vectors, extended by zero on `𝔤₀`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use crate::chevalley::{AlgebraElement, LieAlgebraData};
use crate::config::{self, KeyValues};
use crate::error::{GradationError, ParseError};
use crate::linalg::RationalMatrix;
use crate::rational::{self, Rational};
use crate::rootsys::{Family, Root, RootId, RootSystem, SimpleType};

/// Environment variable naming a directory of `<name>.satake` files that take
/// precedence over the built-in catalog.
pub const CATALOG_ENV: &str = "PARAKAHLER_CATALOG";

/// Crossed simple roots `Π¹` (0-based node indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingSet {
    rank: usize,
    crossed: BTreeSet<usize>,
}

impl CrossingSet {
    pub fn new(rank: usize, nodes: impl IntoIterator<Item = usize>) -> Result<Self, GradationError> {
        let crossed: BTreeSet<usize> = nodes.into_iter().collect();
        if let Some(&bad) = crossed.iter().find(|&&i| i >= rank) {
            return Err(GradationError::NodeOutOfRange { node: bad + 1, rank });
        }
        if crossed.is_empty() {
            return Err(GradationError::EmptyCrossing);
        }
        Ok(Self { rank, crossed })
    }

    /// From 1-based node labels, as written on the command line and in config files.
    pub fn from_one_based(rank: usize, nodes: &[usize]) -> Result<Self, GradationError> {
        if let Some(&bad) = nodes.iter().find(|&&i| i == 0 || i > rank) {
            return Err(GradationError::NodeOutOfRange { node: bad, rank });
        }
        Self::new(rank, nodes.iter().map(|i| i - 1))
    }

    /// All `2^rank - 1` nonempty crossing sets, ordered by bitmask.
    pub fn all_nonempty(rank: usize) -> Vec<CrossingSet> {
        (1u32..(1 << rank))
            .map(|mask| Self {
                rank,
                crossed: (0..rank).filter(|i| mask & (1 << i) != 0).collect(),
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, node: usize) -> bool {
        self.crossed.contains(&node)
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.crossed.iter().copied()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.crossed.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.crossed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossed.is_empty()
    }
}

impl fmt::Display for CrossingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct Gradation {
    rs: RootSystem,
    crossing: CrossingSet,
    /// Degree of each positive root; negatives have the opposite degree.
    degrees: Vec<i64>,
    depth: i64,
    /// `d` in the `H_i` basis.
    grading_element: Vec<Rational>,
}

pub fn grade_from_crossing(rs: &RootSystem, c: &CrossingSet) -> Result<Gradation, GradationError> {
    if c.rank() != rs.rank() {
        return Err(GradationError::TypeMismatch {
            diagram: format!("rank {}", c.rank()),
            algebra: rs.simple_type().to_string(),
        });
    }
    if c.is_empty() {
        return Err(GradationError::EmptyCrossing);
    }
    let degrees: Vec<i64> = rs
        .positive_roots()
        .iter()
        .map(|r| c.nodes().map(|i| r.coeffs()[i]).sum())
        .collect();
    let depth = degrees.iter().copied().max().unwrap_or(0);
    // α_j(d) = Σ_i x_i A_ji must be the crossing indicator, so x = A⁻¹·1
    let indicator: Vec<Rational> =
        (0..rs.rank()).map(|j| if c.contains(j) { rational::one() } else { rational::zero() }).collect();
    let grading_element = rs.weight_matrix().mul_vec(&indicator);
    Ok(Gradation { rs: rs.clone(), crossing: c.clone(), degrees, depth, grading_element })
}

impl Gradation {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn crossing(&self) -> &CrossingSet {
        &self.crossing
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn degree_of(&self, id: RootId) -> i64 {
        let n = self.rs.num_positive();
        if id < n {
            self.degrees[id]
        } else {
            -self.degrees[id - n]
        }
    }

    pub fn degree(&self, r: &Root) -> Option<i64> {
        self.rs.root_id(r).map(|id| self.degree_of(id))
    }

    /// Action of `K` on `X_α`: `+1`, `-1`, or `0` on `𝔤₀`.
    pub fn k_sign(&self, id: RootId) -> i64 {
        self.degree_of(id).signum()
    }

    /// `R₀⁺`: positive roots of degree zero.
    pub fn zero_roots(&self) -> Vec<RootId> {
        (0..self.rs.num_positive()).filter(|&i| self.degrees[i] == 0).collect()
    }

    /// `R⁺ \ R₀⁺`: roots of `𝔪⁺`.
    pub fn nilradical_roots(&self) -> Vec<RootId> {
        (0..self.rs.num_positive()).filter(|&i| self.degrees[i] > 0).collect()
    }

    /// All root ids of degree exactly `p`.
    pub fn roots_of_degree(&self, p: i64) -> Vec<RootId> {
        (0..2 * self.rs.num_positive()).filter(|&id| self.degree_of(id) == p).collect()
    }

    /// `dim 𝔤_p`, counting the Cartan subalgebra in `𝔤₀`.
    pub fn dim_component(&self, p: i64) -> usize {
        let roots = self.roots_of_degree(p).len();
        if p == 0 {
            roots + self.rs.rank()
        } else {
            roots
        }
    }

    /// `dim M = dim 𝔤 - dim 𝔤₀`, the number of roots of nonzero degree.
    pub fn orbit_dimension(&self) -> usize {
        2 * self.nilradical_roots().len()
    }

    pub fn grading_element(&self) -> &[Rational] {
        &self.grading_element
    }

    pub fn grading_element_in(&self, l: &LieAlgebraData) -> AlgebraElement {
        let mut coords = vec![rational::zero(); l.dim()];
        coords[..self.rs.rank()].clone_from_slice(&self.grading_element);
        AlgebraElement::from_coords(coords)
    }

    /// Whether basis position `pos` lies in `𝔤₀`.
    pub fn in_g0(&self, l: &LieAlgebraData, pos: usize) -> bool {
        l.position_root(pos).is_none_or(|id| self.degree_of(id) == 0)
    }

    /// Degree of basis position `pos` (Cartan elements have degree 0).
    pub fn position_degree(&self, l: &LieAlgebraData, pos: usize) -> i64 {
        l.position_root(pos).map_or(0, |id| self.degree_of(id))
    }

    /// Every root of degree `p ≥ 2` is the sum of a degree-1 root and a root of
    /// degree `p - 1`, so `𝔤_{±1}` generates `𝔪±`.
    pub fn is_fundamental(&self) -> bool {
        let n = self.rs.num_positive();
        let ones: Vec<Root> = self.roots_of_degree(1).into_iter().map(|id| self.rs.root(id)).collect();
        (0..n).filter(|&i| self.degrees[i] >= 2).all(|i| {
            let xi = &self.rs.positive_roots()[i];
            ones.iter().any(|b| {
                let rest = xi.sub(b);
                self.degree(&rest) == Some(self.degrees[i] - 1)
            })
        })
    }

    /// Constructive generation check: the span of iterated brackets of
    /// `𝔤_1` has dimension `dim 𝔪⁺`.
    pub fn generates_nilradical(&self, l: &LieAlgebraData) -> bool {
        let dim = l.dim();
        let g1: Vec<AlgebraElement> =
            self.roots_of_degree(1).into_iter().map(|id| l.basis(l.root_position(id))).collect();
        let mut layer = g1.clone();
        let mut span: Vec<AlgebraElement> = g1.clone();
        for _ in 1..self.depth {
            let mut next = Vec::new();
            for x in &g1 {
                for y in &layer {
                    let b = l.bracket(x, y);
                    if !b.is_zero() {
                        next.push(b);
                    }
                }
            }
            span.extend(next.iter().cloned());
            layer = next;
        }
        if span.is_empty() {
            return self.nilradical_roots().is_empty();
        }
        let m = RationalMatrix::from_fn(span.len(), dim, |i, j| span[i].coords()[j].clone());
        m.rank() == self.nilradical_roots().len()
    }
}

/// Real form data: black (compact) simple roots and arrows between
/// σ-equivalent white roots. Node indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeDiagram {
    name: Option<String>,
    ty: SimpleType,
    black: BTreeSet<usize>,
    arrows: BTreeSet<(usize, usize)>,
}

impl SatakeDiagram {
    pub fn new(
        ty: SimpleType,
        black: impl IntoIterator<Item = usize>,
        arrows: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GradationError> {
        let rank = ty.rank();
        let black: BTreeSet<usize> = black.into_iter().collect();
        if let Some(&b) = black.iter().find(|&&b| b >= rank) {
            return Err(GradationError::NodeOutOfRange { node: b + 1, rank });
        }
        let mut norm = BTreeSet::new();
        for (a, b) in arrows {
            if a >= rank || b >= rank {
                return Err(GradationError::NodeOutOfRange { node: a.max(b) + 1, rank });
            }
            if a == b || black.contains(&a) || black.contains(&b) {
                return Err(GradationError::BadArrow(a + 1, b + 1));
            }
            norm.insert((a.min(b), a.max(b)));
        }
        Ok(Self { name: None, ty, black, arrows: norm })
    }

    /// Split real form: no black nodes, no arrows.
    pub fn split(ty: SimpleType) -> Self {
        Self { name: None, ty, black: BTreeSet::new(), arrows: BTreeSet::new() }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn black(&self) -> impl Iterator<Item = usize> + '_ {
        self.black.iter().copied()
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().copied()
    }

    /// Checks both consistency conditions, reporting the first violation.
    pub fn check(&self, c: &CrossingSet) -> Result<(), GradationError> {
        if c.rank() != self.ty.rank() {
            return Err(GradationError::TypeMismatch {
                diagram: self.ty.to_string(),
                algebra: format!("rank {}", c.rank()),
            });
        }
        if let Some(b) = self.black.iter().find(|&&b| c.contains(b)) {
            return Err(GradationError::BlackNodeCrossed(b + 1));
        }
        if let Some(&(a, b)) = self.arrows.iter().find(|&&(a, b)| c.contains(a) != c.contains(b)) {
            return Err(GradationError::ArrowSplit(a + 1, b + 1));
        }
        Ok(())
    }

    /// Parses the `type`/`rank`/`black`/`arrows` keys (1-based nodes).
    pub fn from_config(kv: &KeyValues) -> Result<Self, GradationError> {
        let ty = config_type(kv)?;
        let black = config::parse_index_list("black", kv.get("black").unwrap_or(""))?;
        let arrows = config::parse_pair_list("arrows", kv.get("arrows").unwrap_or(""))?;
        let rank = ty.rank();
        let zero_based = |i: usize| {
            if i == 0 || i > rank {
                Err(GradationError::NodeOutOfRange { node: i, rank })
            } else {
                Ok(i - 1)
            }
        };
        let black = black.into_iter().map(zero_based).collect::<Result<Vec<_>, _>>()?;
        let arrows = arrows
            .into_iter()
            .map(|(a, b)| Ok((zero_based(a)?, zero_based(b)?)))
            .collect::<Result<Vec<_>, GradationError>>()?;
        Self::new(ty, black, arrows)
    }
}

/// `true` iff the real form is consistent with the gradation:
/// (i) no black node is crossed, (ii) arrows join nodes of equal crossing status.
pub fn satake_consistent(s: &SatakeDiagram, c: &CrossingSet) -> Result<bool, GradationError> {
    match s.check(c) {
        Ok(()) => Ok(true),
        Err(GradationError::BlackNodeCrossed(_) | GradationError::ArrowSplit(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The `type` key accepts `A` (with a separate `rank`) or `A3`.
pub fn config_type(kv: &KeyValues) -> Result<SimpleType, GradationError> {
    let t = kv.require("type")?;
    let ty = match kv.get("rank") {
        Some(r) => {
            let family: Family = t.parse()?;
            let rank = r
                .parse()
                .map_err(|_| ParseError::Value { key: "rank".into(), value: r.into() })?;
            SimpleType::new(family, rank)?
        }
        None => t.parse()?,
    };
    Ok(ty)
}

/// A diagram file: Satake data plus an optional `crossed` list.
#[derive(Debug, Clone)]
pub struct DiagramConfig {
    pub diagram: SatakeDiagram,
    pub crossed: Option<CrossingSet>,
}

impl DiagramConfig {
    pub fn parse(text: &str) -> Result<Self, GradationError> {
        let kv = KeyValues::parse(text)?;
        for key in kv.keys() {
            if !matches!(key, "type" | "rank" | "black" | "arrows" | "crossed" | "name") {
                return Err(ParseError::Value { key: key.into(), value: "unknown key".into() }.into());
            }
        }
        let mut diagram = SatakeDiagram::from_config(&kv)?;
        if let Some(name) = kv.get("name") {
            diagram = diagram.named(name);
        }
        let crossed = match kv.get("crossed") {
            Some(v) => Some(CrossingSet::from_one_based(
                diagram.simple_type().rank(),
                &config::parse_index_list("crossed", v)?,
            )?),
            None => None,
        };
        Ok(Self { diagram, crossed })
    }

    pub fn load(path: &Path) -> Result<Self, GradationError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GradationError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::parse(&text)
    }
}

fn ty(f: Family, r: usize) -> SimpleType {
    SimpleType::new(f, r).expect("catalog types are valid")
}

/// Built-in catalog entries as `(name, diagram)`; nodes 0-based.
fn builtin_catalog() -> Vec<(String, SatakeDiagram)> {
    let mut out = Vec::new();
    let mut push = |name: String, d: Result<SatakeDiagram, GradationError>| {
        let d = d.expect("catalog entries are valid").named(&name);
        out.push((name, d));
    };
    // SL(n, R)
    for n in 2..=9 {
        push(format!("sl{n}R"), Ok(SatakeDiagram::split(ty(Family::A, n - 1))));
    }
    // SL(n, H) = SU*(2n): odd nodes black
    for n in 2..=4 {
        let rank = 2 * n - 1;
        push(format!("sl{n}H"), SatakeDiagram::new(ty(Family::A, rank), (0..rank).step_by(2), []));
    }
    // SU(p, q) quasi-split forms: node i paired with its mirror image
    for (name, rank) in [("su21", 2), ("su22", 3), ("su32", 4), ("su33", 5), ("su43", 6), ("su44", 7)] {
        let arrows: Vec<(usize, usize)> = (0..rank / 2).map(|i| (i, rank - 1 - i)).collect();
        push(name.to_string(), SatakeDiagram::new(ty(Family::A, rank), [], arrows));
    }
    // Sp(1,1)
    push("sp11".into(), SatakeDiagram::new(ty(Family::C, 2), [0], []));
    for (f, ranks) in [
        (Family::A, 1..=8),
        (Family::B, 2..=4),
        (Family::C, 2..=4),
        (Family::D, 3..=4),
    ] {
        for r in ranks {
            let t = ty(f, r);
            push(format!("{}split", t.to_string().to_ascii_lowercase()), Ok(SatakeDiagram::split(t)));
        }
    }
    for t in [ty(Family::G, 2), ty(Family::F, 4)] {
        push(format!("{}split", t.to_string().to_ascii_lowercase()), Ok(SatakeDiagram::split(t)));
    }
    out
}

/// Aliases resolved before lookup.
fn canonical_name(name: &str) -> &str {
    match name {
        "su*4" | "su*(4)" => "sl2H",
        "su*6" | "su*(6)" => "sl3H",
        "su*8" | "su*(8)" => "sl4H",
        other => other,
    }
}

pub fn catalog_names() -> Vec<String> {
    builtin_catalog().into_iter().map(|(n, _)| n).collect()
}

/// Looks up a Satake diagram by name, consulting `$PARAKAHLER_CATALOG/<name>.satake` first.
pub fn catalog_lookup(name: &str) -> Result<SatakeDiagram, GradationError> {
    let name = canonical_name(name.trim());
    if let Some(dir) = std::env::var_os(CATALOG_ENV) {
        let path = Path::new(&dir).join(format!("{name}.satake"));
        if path.is_file() {
            return Ok(DiagramConfig::load(&path)?.diagram.named(name));
        }
    }
    builtin_catalog()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, d)| d)
        .ok_or_else(|| GradationError::UnknownDiagram(name.to_string()))
}
