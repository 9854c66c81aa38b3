use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_map_component, ScalarExpr};
use crate::heis::{combinations, Monomial};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::quadrature::{self, Rule};
use crate::Q;

/// Reference domain of a parametrized simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// `[0, 1]^k`.
    Cube,
    /// `{s ≥ 0, Σ s ≤ 1}`.
    Simplex,
}

/// A map from a reference domain of dimension `dim` into ℍⁿ.
#[derive(Clone, Debug)]
pub struct ParamSimplex {
    dim: usize,
    domain: Domain,
    map: Vec<ScalarExpr>,
    jacobian: Vec<Vec<ScalarExpr>>,
    polynomial: Option<Vec<Polynomial>>,
    quadrature_order: usize,
}

impl ParamSimplex {
    pub fn new(dim: usize, domain: Domain, map: Vec<ScalarExpr>, quadrature_order: usize) -> Result<Self> {
        if map.len() % 2 != 1 || map.len() < 3 {
            return Err(Error::InvalidChain(format!(
                "a map into ℍⁿ has 2n+1 components, got {}",
                map.len()
            )));
        }
        if quadrature_order == 0 {
            return Err(Error::InvalidChain("quadrature order must be positive".into()));
        }
        let jacobian = map
            .iter()
            .map(|c| (0..dim).map(|j| c.derivative(j)).collect())
            .collect();
        let polynomial = map.iter().map(ScalarExpr::to_polynomial).collect();
        Ok(ParamSimplex {
            dim,
            domain,
            map,
            jacobian,
            polynomial,
            quadrature_order,
        })
    }

    /// Builds a map from polynomial components.
    pub fn from_polynomials(dim: usize, domain: Domain, comps: &[Polynomial]) -> Result<Self> {
        let map = comps.iter().map(poly_to_expr).collect();
        Self::new(dim, domain, map, quadrature::DEFAULT_ORDER)
    }

    /// Parses components written in `u1..uk`.
    pub fn parse(dim: usize, domain: Domain, comps: &[&str]) -> Result<Self> {
        let map = comps
            .iter()
            .map(|s| parse_map_component(s, dim))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, domain, map, quadrature::DEFAULT_ORDER)
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.quadrature_order = order.max(1);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        (self.map.len() - 1) / 2
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn map(&self) -> &[ScalarExpr] {
        &self.map
    }

    pub fn quadrature_order(&self) -> usize {
        self.quadrature_order
    }

    /// Polynomial components when every component is polynomial.
    pub fn polynomial_map(&self) -> Option<&[Polynomial]> {
        self.polynomial.as_deref()
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial.is_some()
    }

    pub fn rule(&self, order: usize) -> Rule {
        match self.domain {
            Domain::Cube => quadrature::cube_rule(self.dim, order),
            Domain::Simplex => quadrature::simplex_rule(self.dim, order),
        }
    }

    pub fn eval(&self, u: &[f64]) -> Vec<f64> {
        self.map.iter().map(|c| c.eval(u)).collect()
    }

    pub fn coordinate_jacobian(&self, u: &[f64]) -> Matrix<f64> {
        Matrix::from_fn(self.map.len(), self.dim, |i, j| self.jacobian[i][j].eval(u))
    }

    /// Frame-component Jacobian at `u` (rows `X₁..Xₙ, Y₁..Yₙ, Z`).
    pub fn frame_jacobian(&self, u: &[f64]) -> Matrix<f64> {
        frame_jacobian(&self.eval(u), &self.coordinate_jacobian(u), 0.5)
    }

    /// Exact frame Jacobian with polynomial entries in `u`.
    pub fn frame_jacobian_poly(&self) -> Option<Matrix<Polynomial>> {
        let p = self.polynomial.as_ref()?;
        let jc = Matrix::from_fn(p.len(), self.dim, |i, j| p[i].derivative(j));
        Some(frame_jacobian(
            p,
            &jc,
            Polynomial::constant(Q::new(1.into(), 2.into())),
        ))
    }

    /// Composes the map with `(x, y, t) ↦ (λx, λy, λ²t)`.
    pub fn dilate(&self, lambda: &Q) -> Result<Self> {
        if *lambda <= Q::zero() {
            return Err(Error::NonPositiveScale(lambda.to_string()));
        }
        let n = self.n();
        let map = self
            .map
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let s = if i == 2 * n { lambda * lambda } else { lambda.clone() };
                ScalarExpr::mul(ScalarExpr::Const(s), c.clone())
            })
            .collect();
        Self::new(self.dim, self.domain, map, self.quadrature_order)
    }

    /// Signed faces `(sign, face)` of the reference domain.
    pub fn faces(&self) -> Result<Vec<(i64, ParamSimplex)>> {
        let k = self.dim;
        if k == 0 {
            return Err(Error::InvalidChain("a 0-dimensional simplex has no boundary".into()));
        }
        let var = ScalarExpr::Var;
        let cst = |v: i64| ScalarExpr::Const(Q::from_integer(v.into()));
        let mut out = Vec::new();
        let face = |subs: Vec<ScalarExpr>| -> Result<ParamSimplex> {
            let map = self.map.iter().map(|c| c.substitute(&subs)).collect();
            ParamSimplex::new(k - 1, self.domain, map, self.quadrature_order)
        };
        match self.domain {
            Domain::Cube => {
                // ∂Iᵏ = Σᵢ (−1)^i (Fᵢ¹ − Fᵢ⁰), 0-based i
                for i in 0..k {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for (end, s) in [(1, sign), (0, -sign)] {
                        let subs = (0..k)
                            .map(|j| match j.cmp(&i) {
                                std::cmp::Ordering::Less => var(j),
                                std::cmp::Ordering::Equal => cst(end),
                                std::cmp::Ordering::Greater => var(j - 1),
                            })
                            .collect();
                        out.push((s, face(subs)?));
                    }
                }
            }
            Domain::Simplex => {
                // face 0 is Σs = 1, face i ≥ 1 is sᵢ = 0
                let mut rest = cst(1);
                for j in 0..k - 1 {
                    rest = ScalarExpr::sub(rest, var(j));
                }
                let mut subs0 = vec![rest];
                subs0.extend((0..k - 1).map(var));
                out.push((1, face(subs0)?));
                for i in 1..=k {
                    let subs = (0..k)
                        .map(|j| match (j + 1).cmp(&i) {
                            std::cmp::Ordering::Less => var(j),
                            std::cmp::Ordering::Equal => cst(0),
                            std::cmp::Ordering::Greater => var(j - 1),
                        })
                        .collect();
                    out.push((if i % 2 == 0 { 1 } else { -1 }, face(subs)?));
                }
            }
        }
        Ok(out)
    }
}

fn poly_to_expr(p: &Polynomial) -> ScalarExpr {
    let mut acc = ScalarExpr::Const(Q::zero());
    for (e, c) in p.terms() {
        let mut term = ScalarExpr::Const(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = ScalarExpr::mul(term, ScalarExpr::pow(ScalarExpr::Var(i), k));
            }
        }
        acc = ScalarExpr::add(acc, term);
    }
    acc
}

/// `M(F(u)) · J_coord`: only the `Z` row changes, gaining
/// `Σᵢ (yᵢ/2)∂xᵢ − (xᵢ/2)∂yᵢ`.
pub fn frame_jacobian<T>(coords: &[T], jc: &Matrix<T>, half: T) -> Matrix<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let d = coords.len();
    let n = (d - 1) / 2;
    let mut out = jc.clone();
    for j in 0..jc.cols() {
        let mut z = jc[(2 * n, j)].clone();
        for i in 0..n {
            z = z + half.clone() * coords[n + i].clone() * jc[(i, j)].clone()
                - half.clone() * coords[i].clone() * jc[(n + i, j)].clone();
        }
        out[(2 * n, j)] = z;
    }
    out
}

/// All `k × k` minors of a `d × k` matrix, keyed by the row subset.
///
/// Subset dynamic programme over columns: `D[c][S]` is the minor on rows `S`
/// (|S| = c) and the first `c` columns, expanded along column `c − 1`.
pub fn minors<T>(j: &Matrix<T>) -> Vec<(Monomial, T)>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let d = j.rows();
    let k = j.cols();
    let mut prev: std::collections::HashMap<Monomial, T> = std::collections::HashMap::new();
    prev.insert(Monomial::EMPTY, T::one());
    for c in 1..=k {
        let mut next = std::collections::HashMap::new();
        for s in combinations(d, c) {
            let rows: Vec<usize> = s.indices().collect();
            let mut acc = T::zero();
            for (p, &r) in rows.iter().enumerate() {
                let entry = j[(r, c - 1)].clone();
                if entry.is_zero() {
                    continue;
                }
                let sub = &prev[&s.without(r)];
                if sub.is_zero() {
                    continue;
                }
                let term = entry * sub.clone();
                // (−1)^{(p+1)+c}
                acc = if (p + 1 + c) % 2 == 0 { acc + term } else { acc - term };
            }
            next.insert(s, acc);
        }
        prev = next;
    }
    let mut out: Vec<(Monomial, T)> = prev.into_iter().collect();
    out.sort_by_key(|(m, _)| *m);
    out
}

/// A finite integer combination of parametrized simplices of equal dimension.
#[derive(Clone, Debug)]
pub struct Chain {
    n: usize,
    dim: usize,
    simplices: Vec<(i64, ParamSimplex)>,
    embedded_disjoint: bool,
}

impl Chain {
    pub fn empty(n: usize, dim: usize) -> Self {
        Chain {
            n,
            dim,
            simplices: Vec::new(),
            embedded_disjoint: true,
        }
    }

    pub fn new(n: usize, dim: usize, simplices: Vec<(i64, ParamSimplex)>, embedded_disjoint: bool) -> Result<Self> {
        for (_, s) in &simplices {
            if s.n() != n {
                return Err(Error::RankMismatch {
                    left: n,
                    right: s.n(),
                });
            }
            if s.dim() != dim {
                return Err(Error::DegreeMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
        }
        Ok(Chain {
            n,
            dim,
            simplices,
            embedded_disjoint,
        })
    }

    pub fn single(s: ParamSimplex) -> Self {
        Chain {
            n: s.n(),
            dim: s.dim(),
            simplices: vec![(1, s)],
            embedded_disjoint: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplices(&self) -> &[(i64, ParamSimplex)] {
        &self.simplices
    }

    pub fn embedded_disjoint(&self) -> bool {
        self.embedded_disjoint
    }

    pub fn is_polynomial(&self) -> bool {
        self.simplices.iter().all(|(_, s)| s.is_polynomial())
    }

    pub fn boundary(&self) -> Result<Chain> {
        if self.dim == 0 {
            return Err(Error::InvalidChain("a 0-chain has no boundary".into()));
        }
        let mut out = Vec::new();
        for (a, s) in &self.simplices {
            for (sign, f) in s.faces()? {
                out.push((a * sign, f));
            }
        }
        Ok(Chain {
            n: self.n,
            dim: self.dim - 1,
            simplices: out,
            embedded_disjoint: false,
        })
    }

    pub fn pushforward_dilation(&self, lambda: &Q) -> Result<Chain> {
        let simplices = self
            .simplices
            .iter()
            .map(|(a, s)| Ok((*a, s.dilate(lambda)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Chain {
            simplices,
            ..self.clone()
        })
    }

    pub fn from_config(cfg: &ChainConfig) -> Result<Chain> {
        let n = cfg.n;
        if n == 0 {
            return Err(Error::InvalidChain("n must be at least 1".into()));
        }
        let dim = cfg.simplices.first().map_or(0, |s| s.dim);
        let mut simplices = Vec::new();
        for (si, s) in cfg.simplices.iter().enumerate() {
            if s.map.len() != 2 * n + 1 {
                return Err(Error::InvalidChain(format!(
                    "simplex {si}: map has {} components, expected {}",
                    s.map.len(),
                    2 * n + 1
                )));
            }
            let comps = s
                .map
                .iter()
                .enumerate()
                .map(|(ci, src)| {
                    parse_map_component(src, s.dim).map_err(|e| match e {
                        Error::Parse {
                            line,
                            column,
                            message,
                        } => Error::Parse {
                            line,
                            column,
                            message: format!("simplex {si}, component {ci}: {message}"),
                        },
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let ps = ParamSimplex::new(s.dim, s.domain, comps, s.quadrature_order)?;
            simplices.push((s.coefficient, ps));
        }
        Chain::new(n, dim, simplices, cfg.embedded_disjoint)
    }

    pub fn from_json(text: &str) -> Result<Chain> {
        let cfg: ChainConfig = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Chain::from_config(&cfg)
    }
}

fn default_coefficient() -> i64 {
    1
}

fn default_order() -> usize {
    quadrature::DEFAULT_ORDER
}

/// One entry of the `simplices` array of a chain file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexConfig {
    #[serde(default = "default_coefficient")]
    pub coefficient: i64,
    pub dim: usize,
    pub domain: Domain,
    pub map: Vec<String>,
    #[serde(default = "default_order")]
    pub quadrature_order: usize,
}

/// JSON chain file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    pub n: usize,
    pub simplices: Vec<SimplexConfig>,
    #[serde(default)]
    pub embedded_disjoint: bool,
}
