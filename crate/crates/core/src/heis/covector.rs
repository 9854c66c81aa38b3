//! Left-invariant multicovectors on ℍⁿ.
//!
//! The coframe is `ω₁..ωₙ = dx₁..dxₙ`, `ωₙ₊₁..ω₂ₙ = dy₁..dyₙ`, `ω₂ₙ₊₁ = θ`.
//! Internally index `i` (0-based) is bit `i` of a [`Monomial`]; θ is bit `2n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Q;

/// A wedge of distinct coframe elements in increasing index order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub u32);

impl Monomial {
    pub const EMPTY: Monomial = Monomial(0);

    pub fn single(index: usize) -> Monomial {
        Monomial(1 << index)
    }

    pub fn from_sorted(indices: &[usize]) -> Monomial {
        Monomial(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn has_theta(self, n: usize) -> bool {
        self.contains(2 * n)
    }

    /// Weight under anisotropic dilations: degree, plus one when θ is present.
    pub fn weight(self, n: usize) -> usize {
        self.degree() + usize::from(self.has_theta(n))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn without(self, index: usize) -> Monomial {
        Monomial(self.0 & !(1 << index))
    }

    pub fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Sign of `ω_self ∧ ω_other` relative to the sorted monomial, or `None`
    /// when the two share an index.
    pub fn wedge_sign(self, other: Monomial) -> Option<i32> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in other) with i > j
        let mut inversions = 0;
        for j in other.indices() {
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    /// `(−1)^{position of index in self}` if present.
    pub fn interior_sign(self, index: usize) -> Option<i32> {
        if !self.contains(index) {
            return None;
        }
        let before = (self.0 & ((1 << index) - 1)).count_ones();
        Some(if before.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn name(self, n: usize) -> String {
        if self.0 == 0 {
            return "1".into();
        }
        self.indices()
            .map(|i| coframe_name(n, i))
            .collect::<Vec<_>>()
            .join("^")
    }
}

pub fn coframe_name(n: usize, index: usize) -> String {
    if index < n {
        format!("dx{}", index + 1)
    } else if index < 2 * n {
        format!("dy{}", index - n + 1)
    } else {
        "theta".into()
    }
}

/// Which part of the exterior algebra a basis spans.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Space {
    /// All `2n+1` coframe elements.
    Full,
    /// The horizontal algebra `Λ h₁` (no θ).
    Horizontal,
}

impl Space {
    pub fn generators(self, n: usize) -> usize {
        match self {
            Space::Full => 2 * n + 1,
            Space::Horizontal => 2 * n,
        }
    }
}

/// Ordered monomial basis of one degree, lexicographic in the index lists.
#[derive(Clone, Debug)]
pub struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn new(n: usize, space: Space, degree: usize) -> Basis {
        let monomials = combinations(space.generators(n), degree);
        let index = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }
}

/// All `degree`-subsets of `0..generators` as monomials, lexicographically.
pub fn combinations(generators: usize, degree: usize) -> Vec<Monomial> {
    fn rec(start: usize, left: usize, gens: usize, acc: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(acc));
            return;
        }
        for i in start..gens {
            if gens - i < left {
                break;
            }
            rec(i + 1, left - 1, gens, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if degree <= generators {
        rec(0, degree, generators, 0, &mut out);
    }
    out
}

/// An exact homogeneous element of `Λ^k 𝔥*`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiCovector {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<Monomial, Q>,
}

impl MultiCovector {
    pub fn zero(n: usize, degree: usize) -> Self {
        MultiCovector {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    pub fn constant(n: usize, c: Q) -> Self {
        Self::from_monomial(n, Monomial::EMPTY, c)
    }

    pub fn from_monomial(n: usize, m: Monomial, c: Q) -> Self {
        let mut out = Self::zero(n, m.degree());
        out.add_term(m, c);
        out
    }

    /// `c · ω_{i₁} ∧ … ∧ ω_{i_k}` for 0-based indices in any order.
    pub fn wedge_of(n: usize, indices: &[usize], c: Q) -> Result<Self> {
        let mut acc = Self::constant(n, c);
        for &i in indices {
            if i > 2 * n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            acc = acc.wedge(&Self::from_monomial(n, Monomial::single(i), Q::one()))?;
        }
        Ok(acc)
    }

    /// `dxᵢ` with 1-based `i`.
    pub fn dx(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "dx index out of range");
        Self::from_monomial(n, Monomial::single(i - 1), Q::one())
    }

    /// `dyᵢ` with 1-based `i`.
    pub fn dy(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "dy index out of range");
        Self::from_monomial(n, Monomial::single(n + i - 1), Q::one())
    }

    pub fn theta(n: usize) -> Self {
        Self::from_monomial(n, Monomial::single(2 * n), Q::one())
    }

    /// `dθ = −Σⱼ dxⱼ ∧ dyⱼ`.
    pub fn dtheta(n: usize) -> Self {
        let mut out = Self::zero(n, 2);
        for j in 0..n {
            out.add_term(Monomial::from_sorted(&[j, n + j]), -Q::one());
        }
        out
    }

    /// `ω₁ ∧ … ∧ ω₂ₙ`.
    pub fn vol_h(n: usize) -> Self {
        Self::from_monomial(n, Monomial((1 << (2 * n)) - 1), Q::one())
    }

    /// `vol_h ∧ θ`, which equals the coordinate volume `dx ∧ dy ∧ dt`.
    pub fn vol(n: usize) -> Self {
        Self::from_monomial(n, Monomial((1 << (2 * n + 1)) - 1), Q::one())
    }

    pub fn from_vector(n: usize, degree: usize, basis: &Basis, v: &[Q]) -> Self {
        let mut out = Self::zero(n, degree);
        for (m, c) in basis.monomials().iter().zip(v) {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn to_vector(&self, basis: &Basis) -> Vec<Q> {
        let mut v = vec![Q::zero(); basis.len()];
        for (m, c) in &self.coeffs {
            let i = basis
                .position(*m)
                .expect("monomial outside the requested basis");
            v[i] = c.clone();
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Q {
        self.coeffs.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.coeffs.iter()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        if s.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(m, c)| (*m, c * s)).collect();
        out
    }

    /// Exterior product; the result is zero when the degrees overflow `2n+1`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some(s) = a.wedge_sign(*b) {
                    let c = ca * cb;
                    out.add_term(a.union(*b), if s > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the frame vector dual to coframe index `index`.
    pub fn interior(&self, index: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(self.n, 0);
        }
        let mut out = Self::zero(self.n, self.degree - 1);
        for (m, c) in &self.coeffs {
            if let Some(s) = m.interior_sign(index) {
                out.add_term(m.without(index), if s > 0 { c.clone() } else { -c.clone() });
            }
        }
        out
    }

    /// Euclidean inner product making the monomials orthonormal.
    pub fn inner(&self, other: &Self) -> Q {
        if self.degree != other.degree {
            return Q::zero();
        }
        self.coeffs
            .iter()
            .filter_map(|(m, c)| other.coeffs.get(m).map(|d| c * d))
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn norm_squared(&self) -> Q {
        self.inner(self)
    }

    pub fn is_horizontal(&self) -> bool {
        self.coeffs.keys().all(|m| !m.has_theta(self.n))
    }

    pub fn is_vertical(&self) -> bool {
        self.coeffs.keys().all(|m| m.has_theta(self.n))
    }

    /// Orthogonal split into the horizontal part and the part divisible by θ.
    pub fn weight_split(&self) -> (Self, Self) {
        let mut h = Self::zero(self.n, self.degree);
        let mut v = Self::zero(self.n, self.degree);
        for (m, c) in &self.coeffs {
            if m.has_theta(self.n) {
                v.add_term(*m, c.clone());
            } else {
                h.add_term(*m, c.clone());
            }
        }
        (h, v)
    }

    /// Pullback by the dilation `𝔰_λ`: each monomial scales by `λ^weight`.
    pub fn dilation_pullback(&self, lambda: &Q) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::NonPositiveScale(lambda.to_string()));
        }
        let mut out = Self::zero(self.n, self.degree);
        for (m, c) in &self.coeffs {
            out.add_term(*m, c * num_traits::pow(lambda.clone(), m.weight(self.n)));
        }
        Ok(out)
    }

    /// `L a = dθ ∧ a` on horizontal covectors.
    pub fn lefschetz_raise(&self) -> Result<Self> {
        if !self.is_horizontal() {
            return Err(Error::NotHorizontal);
        }
        let out = MultiCovector::dtheta(self.n).wedge(self)?;
        // dθ ∧ a stays horizontal; degrees past 2n vanish automatically
        Ok(out)
    }

    /// `Λ a = −Σⱼ ι(Yⱼ) ι(Xⱼ) a`, the metric adjoint of [`Self::lefschetz_raise`].
    /// Degrees below 2 give zero in degree 0.
    pub fn lefschetz_lower(&self) -> Result<Self> {
        if !self.is_horizontal() {
            return Err(Error::NotHorizontal);
        }
        if self.degree < 2 {
            return Ok(Self::zero(self.n, 0));
        }
        let mut out = Self::zero(self.n, self.degree - 2);
        for j in 0..self.n {
            let term = self.interior(j).interior(self.n + j);
            out = out.checked_add(&term.scale(&-Q::one()))?;
        }
        Ok(out)
    }

    /// Hodge star of the horizontal algebra for the orientation `ω₁∧…∧ω₂ₙ`,
    /// normalised by `a ∧ ⋆b = ⟨a, b⟩ vol_h`.
    pub fn hodge_star_h(&self) -> Result<Self> {
        if !self.is_horizontal() {
            return Err(Error::NotHorizontal);
        }
        let full = Monomial((1 << (2 * self.n)) - 1);
        let mut out = Self::zero(self.n, 2 * self.n - self.degree);
        for (m, c) in &self.coeffs {
            let comp = Monomial(full.0 & !m.0);
            let s = m.wedge_sign(comp).expect("complement is disjoint");
            out.add_term(comp, if s > 0 { c.clone() } else { -c.clone() });
        }
        Ok(out)
    }
}

impl Add for &MultiCovector {
    type Output = MultiCovector;
    fn add(self, rhs: &MultiCovector) -> MultiCovector {
        self.checked_add(rhs).expect("incompatible multicovectors")
    }
}

impl Sub for &MultiCovector {
    type Output = MultiCovector;
    fn sub(self, rhs: &MultiCovector) -> MultiCovector {
        self.checked_add(&-rhs).expect("incompatible multicovectors")
    }
}

impl Neg for &MultiCovector {
    type Output = MultiCovector;
    fn neg(self) -> MultiCovector {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for MultiCovector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.0 == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", m.name(self.n))?;
            } else {
                write!(f, "{mag}*{}", m.name(self.n))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiCovector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiCovector[n={}, k={}]({self})", self.n, self.degree)
    }
}
