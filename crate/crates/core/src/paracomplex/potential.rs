//! Para-Kähler potentials in a single chart.
//!
//! Points are given in real adapted coordinates `(u, v) = (z₊, z₋)`, laid out
//! as `[u¹..uⁿ, v¹..vⁿ]`. A para-holomorphic coordinate is
//! `z = (u+v)/2 + e(u-v)/2`, so a polynomial `P(z, z̄)` with symmetric
//! coefficients is the real function `P(u, v)`.

use std::fmt;
use std::path::Path;

use num_traits::Zero;

use super::number::ParaComplex;
use super::poly::Poly;
use crate::config::{self, KeyValues};
use crate::error::{ParaError, ParseError};
use crate::linalg::RationalMatrix;
use crate::rational::{self, Rational};

/// `coeff · Π (z^α)^{a_α} (z̄^α)^{b_α}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub z: Vec<u32>,
    pub zbar: Vec<u32>,
}

impl Monomial {
    /// Parses `coeff * z1^a1 * zbar1^b1 * ...`; the coefficient is optional.
    pub fn parse(n: usize, text: &str) -> Result<Self, ParseError> {
        let bad = |msg: &str| ParseError::Value { key: "term".into(), value: format!("{text}: {msg}") };
        let mut coeff = rational::one();
        let mut z = vec![0; n];
        let mut zbar = vec![0; n];
        for (k, factor) in text.split('*').map(str::trim).enumerate() {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (factor, 1),
            };
            let (slot, idx) = if let Some(i) = base.strip_prefix("zbar") {
                (&mut zbar, i)
            } else if let Some(i) = base.strip_prefix('z') {
                (&mut z, i)
            } else if k == 0 {
                coeff = rational::parse(factor)?;
                continue;
            } else {
                return Err(bad("expected z<i> or zbar<i>"));
            };
            let i: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
            if i == 0 || i > n {
                return Err(bad("variable index out of range"));
            }
            slot[i - 1] += exp;
        }
        Ok(Self { coeff, z, zbar })
    }

    fn conjugate_key(&self) -> (Vec<u32>, Vec<u32>) {
        (self.zbar.clone(), self.z.clone())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rational::render(&self.coeff))?;
        for (name, exps) in [("z", &self.z), ("zbar", &self.zbar)] {
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " * {name}{}", i + 1)?,
                    _ => write!(f, " * {name}{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKind {
    Polynomial(Vec<Monomial>),
    /// `F = scale · log(1 + Σ z^α z̄^α)`.
    LogModel { scale: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartPotential {
    n: usize,
    kind: PotentialKind,
}

impl ChartPotential {
    /// `F = Σ z^α z̄^α`, whose metric is the identity.
    pub fn flat(n: usize) -> Self {
        let terms = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                Monomial { coeff: rational::one(), z: e.clone(), zbar: e }
            })
            .collect();
        Self { n, kind: PotentialKind::Polynomial(terms) }
    }

    pub fn log_model(n: usize, scale: f64) -> Self {
        Self { n, kind: PotentialKind::LogModel { scale } }
    }

    /// Combines like terms and rejects potentials that are not real.
    pub fn polynomial(n: usize, terms: Vec<Monomial>) -> Result<Self, ParaError> {
        let mut merged: Vec<Monomial> = Vec::new();
        for t in terms {
            if t.z.len() != n || t.zbar.len() != n {
                return Err(ParaError::Dimension { expected: n, got: t.z.len() });
            }
            match merged.iter_mut().find(|m| m.z == t.z && m.zbar == t.zbar) {
                Some(m) => m.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|m| !m.coeff.is_zero());
        for m in &merged {
            let (cz, czbar) = m.conjugate_key();
            let partner = merged.iter().find(|o| o.z == cz && o.zbar == czbar).map(|o| &o.coeff);
            if partner != Some(&m.coeff) {
                return Err(ParaError::NotReal(m.to_string()));
            }
        }
        Ok(Self { n, kind: PotentialKind::Polynomial(merged) })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.kind, PotentialKind::Polynomial(_))
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            PotentialKind::Polynomial(terms) => {
                let t: Vec<String> = terms.iter().map(ToString::to_string).collect();
                if t.is_empty() {
                    "0".into()
                } else {
                    t.join(" + ")
                }
            }
            PotentialKind::LogModel { scale } => format!("{scale} * log(1 + sum z zbar)"),
        }
    }

    fn check_point(&self, p: &[f64]) -> Result<(), ParaError> {
        if p.len() != 2 * self.n {
            return Err(ParaError::Dimension { expected: 2 * self.n, got: p.len() });
        }
        Ok(())
    }

    /// `P(u, v)` as an exact polynomial in `[u¹..uⁿ, v¹..vⁿ]`; `None` for builtins.
    pub fn adapted_poly(&self) -> Option<Poly<Rational>> {
        let PotentialKind::Polynomial(terms) = &self.kind else { return None };
        let mut p = Poly::zero(2 * self.n);
        for t in terms {
            let exps: Vec<u32> = t.z.iter().chain(&t.zbar).copied().collect();
            p = p.add(&Poly::monomial(2 * self.n, exps, t.coeff.clone()));
        }
        Some(p)
    }

    /// `P(z, z̄)` expanded in `[x¹..xⁿ, y¹..yⁿ]` with `z = x + e y`.
    pub fn para_poly(&self) -> Option<Poly<ParaComplex<Rational>>> {
        let PotentialKind::Polynomial(terms) = &self.kind else { return None };
        let nv = 2 * self.n;
        let e = ParaComplex::<Rational>::e();
        let x = |i: usize| Poly::<ParaComplex<Rational>>::var(nv, i);
        let y = |i: usize| Poly::var(nv, self.n + i);
        let mut p = Poly::zero(nv);
        for t in terms {
            let mut m = Poly::constant(nv, ParaComplex::real(t.coeff.clone()));
            for i in 0..self.n {
                let zi = x(i).add(&y(i).scale(&e));
                let zbi = &x(i) - &y(i).scale(&e);
                m = m.mul(&zi.pow(t.z[i])).mul(&zbi.pow(t.zbar[i]));
            }
            p = p.add(&m);
        }
        Some(p)
    }

    /// Value that must stay above the admissibility margin (`+∞` when the potential has no singular set).
    pub fn singular_margin(&self, p: &[f64]) -> f64 {
        match self.kind {
            PotentialKind::Polynomial(_) => f64::INFINITY,
            PotentialKind::LogModel { .. } => 1.0 + (0..self.n).map(|i| p[i] * p[self.n + i]).sum::<f64>(),
        }
    }

    pub fn value(&self, p: &[f64]) -> Result<f64, ParaError> {
        self.check_point(p)?;
        match &self.kind {
            PotentialKind::Polynomial(_) => {
                let poly = self.adapted_poly().expect("polynomial");
                Ok(poly.evaluate_with(p, rational::to_f64))
            }
            PotentialKind::LogModel { scale } => {
                let arg = self.singular_margin(p);
                if arg <= 0.0 {
                    return Err(ParaError::Inadmissible(format!("log argument {arg} is not positive")));
                }
                Ok(scale * arg.ln())
            }
        }
    }

    /// Exact `H_{αβ} = ∂²F/∂u^α∂v^β` at a rational point.
    pub fn exact_metric(&self, p: &[Rational]) -> Option<RationalMatrix> {
        let poly = self.adapted_poly()?;
        let n = self.n;
        Some(RationalMatrix::from_fn(n, n, |a, b| poly.derivative(a).derivative(n + b).evaluate(p)))
    }

    /// `g_{αβ̄} = ∂_α∂_β̄ F` by Wirtinger derivatives `∂ = (∂_x + e∂_y)/2`,
    /// evaluated at the rational point `z = x + e y`.
    pub fn wirtinger_metric(&self, x: &[Rational], y: &[Rational]) -> Option<Vec<Vec<ParaComplex<Rational>>>> {
        let poly = self.para_poly()?;
        let n = self.n;
        let point: Vec<ParaComplex<Rational>> = x.iter().chain(y).map(|c| ParaComplex::real(c.clone())).collect();
        let quarter = ParaComplex::real(rational::frac(1, 4));
        let e = ParaComplex::<Rational>::e();
        let d2 = |i: usize, j: usize| poly.derivative(i).derivative(j).evaluate(&point);
        Some(
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let re = d2(a, b) - d2(n + a, n + b);
                            let im = d2(n + a, b) - d2(a, n + b);
                            quarter.clone() * (re + e.clone() * im)
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

/// Where to sample a potential.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleSpec {
    Points(Vec<Vec<f64>>),
    /// `count × count` grid in `(u¹, v¹)` over `[-radius, radius]²`, other coordinates zero.
    Grid { count: usize, radius: f64 },
}

impl SampleSpec {
    pub fn points(&self, n: usize) -> Vec<Vec<f64>> {
        match self {
            SampleSpec::Points(p) => p.clone(),
            SampleSpec::Grid { count, radius } => {
                let step = |k: usize| {
                    if *count == 1 {
                        0.0
                    } else {
                        -radius + 2.0 * radius * k as f64 / (*count - 1) as f64
                    }
                };
                let mut out = Vec::with_capacity(count * count);
                for i in 0..*count {
                    for j in 0..*count {
                        let mut p = vec![0.0; 2 * n];
                        p[0] = step(i);
                        p[n] = step(j);
                        out.push(p);
                    }
                }
                out
            }
        }
    }
}

/// Parsed `potential` command input.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialConfig {
    pub potential: ChartPotential,
    pub samples: SampleSpec,
    /// Fixed Einstein constant; fitted at the first sample when absent.
    pub lambda: Option<f64>,
    pub margin: f64,
    pub h: f64,
    pub outer_h: f64,
}

const POTENTIAL_KEYS: &[&str] =
    &["dimension", "term", "builtin", "scale", "point", "grid", "radius", "lambda", "margin", "h", "outer_h"];

fn parse_f64(key: &str, v: &str) -> Result<f64, ParseError> {
    v.trim().parse().map_err(|_| ParseError::Value { key: key.into(), value: v.into() })
}

impl PotentialConfig {
    pub fn parse(text: &str) -> Result<Self, ParaError> {
        let kv = KeyValues::parse(text)?;
        if let Some(k) = kv.keys().find(|k| !POTENTIAL_KEYS.contains(k)) {
            return Err(ParseError::Value { key: k.into(), value: "unknown key".into() }.into());
        }
        let dim_text = kv.get("dimension").unwrap_or("1");
        let n: usize = dim_text
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ParseError::Value { key: "dimension".into(), value: dim_text.into() })?;
        let potential = match kv.get("builtin") {
            Some("log") => {
                if kv.get_all("term").next().is_some() {
                    return Err(ParseError::Value { key: "term".into(), value: "not allowed with builtin".into() }.into());
                }
                ChartPotential::log_model(n, kv.get("scale").map(|s| parse_f64("scale", s)).transpose()?.unwrap_or(1.0))
            }
            Some("flat") => ChartPotential::flat(n),
            Some(other) => return Err(ParseError::Value { key: "builtin".into(), value: other.into() }.into()),
            None => {
                let terms = kv
                    .get_all("term")
                    .map(|(t, line)| {
                        Monomial::parse(n, t).map_err(|e| ParseError::Config { line, msg: e.to_string() })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if terms.is_empty() {
                    return Err(ParseError::MissingKey("term").into());
                }
                ChartPotential::polynomial(n, terms)?
            }
        };
        let points: Vec<Vec<f64>> = kv
            .get_all("point")
            .map(|(p, line)| {
                let coords = p
                    .split(',')
                    .map(|c| parse_f64("point", c))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| ParseError::Config { line, msg: e.to_string() })?;
                if coords.len() != 2 * n {
                    return Err(ParaError::Dimension { expected: 2 * n, got: coords.len() });
                }
                Ok(coords)
            })
            .collect::<Result<_, ParaError>>()?;
        let samples = match kv.get("grid") {
            Some(g) => {
                let count = config::parse_index_list("grid", g)?;
                let [count] = count[..] else {
                    return Err(ParseError::Value { key: "grid".into(), value: g.into() }.into());
                };
                let radius = parse_f64("radius", kv.get("radius").unwrap_or("0.3"))?;
                SampleSpec::Grid { count, radius }
            }
            None if points.is_empty() => SampleSpec::Points(vec![vec![0.0; 2 * n]]),
            None => SampleSpec::Points(points),
        };
        let get = |k: &str, default: f64| kv.get(k).map_or(Ok(default), |v| parse_f64(k, v));
        Ok(Self {
            potential,
            samples,
            lambda: kv.get("lambda").map(|v| parse_f64("lambda", v)).transpose()?,
            margin: get("margin", 0.1)?,
            h: get("h", 1e-3)?,
            outer_h: get("outer_h", super::curvature::FdConfig::default().outer_h)?,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ParaError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            ParaError::Parse(ParseError::Config { line: 0, msg: format!("reading {}: {e}", path.display()) })
        })?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_parsing() {
        let m = Monomial::parse(2, "-1/2 * z1^2 * zbar2").unwrap();
        assert_eq!(m.coeff, rational::frac(-1, 2));
        assert_eq!((m.z.clone(), m.zbar.clone()), (vec![2, 0], vec![0, 1]));
        assert_eq!(Monomial::parse(1, "z1*zbar1").unwrap().coeff, rational::one());
        assert!(Monomial::parse(1, "z2").is_err());
        assert!(Monomial::parse(1, "3 * w1").is_err());
        assert_eq!(m.to_string(), "-1/2 * z1^2 * zbar2");
    }

    #[test]
    fn reality_condition() {
        let t = |s: &str| Monomial::parse(1, s).unwrap();
        assert!(ChartPotential::polynomial(1, vec![t("z1^2")]).is_err());
        assert!(ChartPotential::polynomial(1, vec![t("z1^2"), t("zbar1^2")]).is_ok());
        assert!(ChartPotential::polynomial(1, vec![t("z1^2"), t("2*zbar1^2")]).is_err());
    }

    #[test]
    fn flat_metric_is_identity() {
        let f = ChartPotential::flat(2);
        let p = vec![rational::frac(1, 3), rational::int(2), rational::frac(-1, 5), rational::int(0)];
        assert_eq!(f.exact_metric(&p).unwrap(), RationalMatrix::identity(2));
    }

    #[test]
    fn log_model_value() {
        let f = ChartPotential::log_model(1, 2.0);
        assert_eq!(f.value(&[0.0, 0.0]).unwrap(), 0.0);
        assert!(f.value(&[2.0, -1.0]).is_err());
        assert!(f.value(&[1.0]).is_err());
    }

    #[test]
    fn config_parsing() {
        let c = PotentialConfig::parse("builtin = log\nscale = 2\ngrid = 9\nradius = 0.3\n").unwrap();
        assert_eq!(c.potential, ChartPotential::log_model(1, 2.0));
        assert_eq!(c.samples.points(1).len(), 81);
        let c = PotentialConfig::parse("dimension = 2\nterm = z1*zbar1\nterm = z2*zbar2\npoint = 0.1, 0, 0, 0.2\n").unwrap();
        assert_eq!(c.potential, ChartPotential::flat(2));
        assert_eq!(c.samples, SampleSpec::Points(vec![vec![0.1, 0.0, 0.0, 0.2]]));
        assert!(PotentialConfig::parse("term = z1\n").is_err());
        assert!(PotentialConfig::parse("builtin = sinh\n").is_err());
        assert!(PotentialConfig::parse("builtin = flat\npoint = 1\n").is_err());
    }
}
