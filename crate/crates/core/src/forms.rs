//! Differential forms with polynomial coefficients in the left-invariant coframe.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::heis::{GradedOperator, GroupPoint, Monomial, MultiCovector};
use crate::poly::Polynomial;
use crate::Q;

/// A left-invariant frame field acting as a first-order operator.
/// Indices are 1-based as in `X₁..Xₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    X(usize),
    Y(usize),
    Z,
}

/// `Xᵢ = ∂xᵢ − ½yᵢ∂t`, `Yᵢ = ∂yᵢ + ½xᵢ∂t`, `Z = ∂t` applied to `f`.
pub fn horiz_derive(n: usize, f: &Polynomial, field: Field) -> Result<Polynomial> {
    let t = 2 * n;
    let half = Q::new(1.into(), 2.into());
    match field {
        Field::X(i) | Field::Y(i) if i == 0 || i > n => Err(Error::IndexOutOfRange { index: i, n }),
        Field::X(i) => {
            let corr = &Polynomial::var(n + i - 1).scale(&half) * &f.derivative(t);
            Ok(&f.derivative(i - 1) - &corr)
        }
        Field::Y(i) => {
            let corr = &Polynomial::var(i - 1).scale(&half) * &f.derivative(t);
            Ok(&f.derivative(n + i - 1) + &corr)
        }
        Field::Z => Ok(f.derivative(t)),
    }
}

/// `d(ω_I)` for a constant coframe monomial, with `dθ = s·(−Σ ωⱼ∧ωₙ₊ⱼ)`.
/// Writing `ω_I = ω_{I'} ∧ θ`, `d(ω_I) = (−1)^{|I'|} ω_{I'} ∧ dθ`.
pub(crate) fn d_of_monomial(n: usize, m: Monomial, dtheta_sign: i32) -> MultiCovector {
    let th = 2 * n;
    if !m.contains(th) {
        return MultiCovector::zero(n, m.degree() + 1);
    }
    let rest = m.without(th);
    let mut dtheta = MultiCovector::dtheta(n);
    if dtheta_sign < 0 {
        dtheta = -&dtheta;
    }
    let out = MultiCovector::from_monomial(n, rest, Q::one())
        .wedge(&dtheta)
        .expect("same rank");
    if rest.degree() % 2 == 1 {
        -&out
    } else {
        out
    }
}

/// A rational coordinate box `Π [loᵢ, hiᵢ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxDomain {
    lo: Vec<Q>,
    hi: Vec<Q>,
}

impl BoxDomain {
    pub fn new(lo: Vec<Q>, hi: Vec<Q>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DegenerateBox(format!(
                "{} lower bounds vs {} upper bounds",
                lo.len(),
                hi.len()
            )));
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] >= hi[i]) {
            return Err(Error::DegenerateBox(format!(
                "side {i} is [{}, {}]",
                lo[i], hi[i]
            )));
        }
        Ok(BoxDomain { lo, hi })
    }

    /// `[a, b]^dim`.
    pub fn cube(dim: usize, a: Q, b: Q) -> Result<Self> {
        Self::new(vec![a; dim], vec![b; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Q] {
        &self.lo
    }

    pub fn hi(&self) -> &[Q] {
        &self.hi
    }

    pub fn bounds(&self) -> Vec<(Q, Q)> {
        self.lo.iter().cloned().zip(self.hi.iter().cloned()).collect()
    }

    /// `Πᵢ ((cᵢ − aᵢ)(bᵢ − cᵢ))²`, vanishing to second order on the boundary.
    pub fn bump(&self) -> Polynomial {
        let mut acc = Polynomial::one();
        for i in 0..self.dim() {
            let c = Polynomial::var(i);
            let left = &c - &Polynomial::constant(self.lo[i].clone());
            let right = &Polynomial::constant(self.hi[i].clone()) - &c;
            acc = &acc * &(&left * &right).pow(2);
        }
        acc
    }

    pub fn integrate(&self, p: &Polynomial) -> Q {
        p.integrate_box(&self.bounds())
    }
}

/// `Σ_I f_I ω_I` with polynomial `f_I` in the coordinates `(x, y, t)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<Monomial, Polynomial>,
}

impl PolyForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        PolyForm {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(n: usize, f: Polynomial) -> Self {
        Self::from_monomial(n, Monomial::EMPTY, f)
    }

    pub fn from_monomial(n: usize, m: Monomial, f: Polynomial) -> Self {
        let mut out = Self::zero(n, m.degree());
        out.add_term(m, f);
        out
    }

    pub fn from_covector(a: &MultiCovector) -> Self {
        let mut out = Self::zero(a.n(), a.degree());
        for (m, c) in a.terms() {
            out.add_term(*m, Polynomial::constant(c.clone()));
        }
        out
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

    pub fn coeff(&self, m: Monomial) -> Polynomial {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.coeffs.iter()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, f: Polynomial) {
        debug_assert_eq!(m.degree(), self.degree);
        if f.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_default();
        *slot += f;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    /// Largest total degree among the coefficients.
    pub fn coeff_degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(Polynomial::degree).max()
    }

    /// Weighted degree of the coefficients (`x, y` weight 1, `t` weight 2).
    pub fn coeff_weighted_degree(&self) -> Option<u32> {
        let t = 2 * self.n;
        self.coeffs
            .values()
            .filter_map(|f| f.weighted_degree(|i| if i == t { 2 } else { 1 }))
            .max()
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
        for (m, f) in &other.coeffs {
            out.add_term(*m, f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (m, f) in &self.coeffs {
            out.add_term(*m, f.scale(s));
        }
        out
    }

    /// Multiplication by the function `f`.
    pub fn mul_function(&self, f: &Polynomial) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (m, g) in &self.coeffs {
            out.add_term(*m, f * g);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (a, f) in &self.coeffs {
            for (b, g) in &other.coeffs {
                if let Some(s) = a.wedge_sign(*b) {
                    let p = f * g;
                    out.add_term(a.union(*b), if s > 0 { p } else { -p });
                }
            }
        }
        Ok(out)
    }

    /// Applies a covector operator to every coefficient slot.
    /// Degrees without a block map to zero of degree `fallback`.
    pub fn apply_operator(&self, op: &GradedOperator, fallback: usize) -> Result<Self> {
        if op.n() != self.n {
            return Err(Error::RankMismatch {
                left: op.n(),
                right: self.n,
            });
        }
        let Some(block) = op.block(self.degree) else {
            return Ok(Self::zero(self.n, fallback));
        };
        let mut out = Self::zero(self.n, block.target);
        for (m, f) in &self.coeffs {
            let j = block
                .source_basis
                .position(*m)
                .ok_or(Error::NotHorizontal)?;
            for (i, tm) in block.target_basis.monomials().iter().enumerate() {
                let c = &block.matrix[(i, j)];
                if !c.is_zero() {
                    out.add_term(*tm, f.scale(c));
                }
            }
        }
        Ok(out)
    }

    pub fn exterior_d(&self) -> Self {
        self.exterior_d_signed(1)
    }

    /// `d` computed with `dθ` multiplied by `dtheta_sign`; only `+1` is the
    /// true differential, the other sign exists for negative controls.
    pub fn exterior_d_signed(&self, dtheta_sign: i32) -> Self {
        let mut out = Self::zero(self.n, self.degree + 1);
        for j in 0..=2 {
            let part = self.d_weight_part_signed(j, dtheta_sign);
            for (m, f) in part.coeffs {
                out.add_term(m, f);
            }
        }
        out
    }

    /// Component of `d` raising weight by `j`: `j = 0` is `f·dω_I`, `j = 1` the
    /// horizontal derivatives and `j = 2` the `Z` derivative. Zero for `j > 2`.
    pub fn d_weight_part(&self, j: usize) -> Self {
        self.d_weight_part_signed(j, 1)
    }

    fn d_weight_part_signed(&self, j: usize, dtheta_sign: i32) -> Self {
        let n = self.n;
        let mut out = Self::zero(n, self.degree + 1);
        if self.degree > 2 * n {
            return out;
        }
        for (m, f) in &self.coeffs {
            match j {
                0 => {
                    for (dm, c) in d_of_monomial(n, *m, dtheta_sign).terms() {
                        out.add_term(*dm, f.scale(c));
                    }
                }
                1 => {
                    for i in 1..=n {
                        let xf = horiz_derive(n, f, Field::X(i)).expect("index in range");
                        let yf = horiz_derive(n, f, Field::Y(i)).expect("index in range");
                        out.add_left(i - 1, *m, xf);
                        out.add_left(n + i - 1, *m, yf);
                    }
                }
                2 => {
                    let zf = horiz_derive(n, f, Field::Z).expect("index in range");
                    out.add_left(2 * n, *m, zf);
                }
                _ => {}
            }
        }
        out
    }

    /// Adds `g · ω_index ∧ ω_m`.
    fn add_left(&mut self, index: usize, m: Monomial, g: Polynomial) {
        if let Some(s) = Monomial::single(index).wedge_sign(m) {
            self.add_term(m.union(Monomial::single(index)), if s > 0 { g } else { -g });
        }
    }

    pub fn evaluate_at(&self, p: &GroupPoint) -> Result<MultiCovector> {
        if p.n() != self.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: p.n(),
            });
        }
        let c = p.coords();
        let mut out = MultiCovector::zero(self.n, self.degree);
        for (m, f) in &self.coeffs {
            out = out.checked_add(&MultiCovector::from_monomial(self.n, *m, f.eval(&c)))?;
        }
        Ok(out)
    }

    /// Coefficients at a float point `(x, y, t)`.
    pub fn evaluate_f64(&self, coords: &[f64]) -> Vec<(Monomial, f64)> {
        self.coeffs
            .iter()
            .map(|(m, f)| (*m, f.eval_f64(coords)))
            .collect()
    }

    pub fn weight_split(&self) -> (Self, Self) {
        let mut h = Self::zero(self.n, self.degree);
        let mut v = Self::zero(self.n, self.degree);
        for (m, f) in &self.coeffs {
            if m.has_theta(self.n) {
                v.add_term(*m, f.clone());
            } else {
                h.add_term(*m, f.clone());
            }
        }
        (h, v)
    }

    pub fn is_horizontal(&self) -> bool {
        self.coeffs.keys().all(|m| !m.has_theta(self.n))
    }

    pub fn is_vertical(&self) -> bool {
        self.coeffs.keys().all(|m| m.has_theta(self.n))
    }

    /// Multiplies every coefficient by the bump of `dom`.
    pub fn bump_multiply(&self, dom: &BoxDomain) -> Result<Self> {
        if dom.dim() != 2 * self.n + 1 {
            return Err(Error::DegenerateBox(format!(
                "box has dimension {}, expected {}",
                dom.dim(),
                2 * self.n + 1
            )));
        }
        Ok(self.mul_function(&dom.bump()))
    }

    /// `∫_box α` for a top-degree form. The coefficient of `vol_h ∧ θ` is the
    /// coordinate density because `vol_h ∧ θ = dx ∧ dy ∧ dt`.
    pub fn integrate_top(&self, dom: &BoxDomain) -> Result<Q> {
        let top = 2 * self.n + 1;
        if self.degree != top {
            return Err(Error::DegreeMismatch {
                expected: top,
                found: self.degree,
            });
        }
        if dom.dim() != top {
            return Err(Error::DegenerateBox(format!(
                "box has dimension {}, expected {top}",
                dom.dim()
            )));
        }
        Ok(dom.integrate(&self.coeff(Monomial((1 << top) - 1))))
    }

    /// `𝔰_λ^*`: coefficients composed with the dilation, monomials scaled by `λ^weight`.
    pub fn dilation_pullback(&self, lambda: &Q) -> Result<Self> {
        if *lambda <= Q::zero() {
            return Err(Error::NonPositiveScale(lambda.to_string()));
        }
        let n = self.n;
        let subs: Vec<Polynomial> = (0..=2 * n)
            .map(|i| {
                let s = if i == 2 * n { lambda * lambda } else { lambda.clone() };
                Polynomial::var(i).scale(&s)
            })
            .collect();
        let mut out = Self::zero(n, self.degree);
        for (m, f) in &self.coeffs {
            let s = num_traits::pow(lambda.clone(), m.weight(n));
            out.add_term(*m, f.compose(&subs).scale(&s));
        }
        Ok(out)
    }
}

impl Add for &PolyForm {
    type Output = PolyForm;
    fn add(self, rhs: &PolyForm) -> PolyForm {
        self.checked_add(rhs).expect("incompatible forms")
    }
}

impl Sub for &PolyForm {
    type Output = PolyForm;
    fn sub(self, rhs: &PolyForm) -> PolyForm {
        self.checked_add(&-rhs).expect("incompatible forms")
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, p)| {
                let c = p.display_heis(self.n);
                if m.0 == 0 {
                    format!("({c})")
                } else {
                    format!("({c})*{}", m.name(self.n))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyForm[n={}, k={}]({self})", self.n, self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};
    use proptest::prelude::*;

    fn var(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn cov(n: usize, idx: &[usize]) -> PolyForm {
        PolyForm::from_covector(&MultiCovector::wedge_of(n, idx, qi(1)).unwrap())
    }

    #[test]
    fn frame_fields_on_t() {
        let n = 1;
        let t = var(2);
        assert_eq!(horiz_derive(n, &t, Field::X(1)).unwrap(), var(1).scale(&q(-1, 2)));
        assert_eq!(horiz_derive(n, &t, Field::Y(1)).unwrap(), var(0).scale(&q(1, 2)));
        let x2y = &var(0).pow(2) * &var(1);
        assert!(horiz_derive(n, &x2y, Field::Z).unwrap().is_zero());
        assert!(horiz_derive(n, &t, Field::X(2)).is_err());
        assert!(horiz_derive(n, &t, Field::Y(0)).is_err());
    }

    #[test]
    fn bracket_table() {
        // [Xᵢ, Yⱼ] = δᵢⱼ Z and every other bracket vanishes, on x, y, t
        let n = 2;
        let fields: Vec<Field> = (1..=n)
            .map(Field::X)
            .chain((1..=n).map(Field::Y))
            .chain([Field::Z])
            .collect();
        for a in &fields {
            for b in &fields {
                for v in 0..=2 * n {
                    let f = var(v);
                    let ab = horiz_derive(n, &horiz_derive(n, &f, *b).unwrap(), *a).unwrap();
                    let ba = horiz_derive(n, &horiz_derive(n, &f, *a).unwrap(), *b).unwrap();
                    let bracket = &ab - &ba;
                    let expected = match (a, b) {
                        (Field::X(i), Field::Y(j)) if i == j => horiz_derive(n, &f, Field::Z).unwrap(),
                        (Field::Y(i), Field::X(j)) if i == j => -&horiz_derive(n, &f, Field::Z).unwrap(),
                        _ => Polynomial::zero(),
                    };
                    assert_eq!(bracket, expected, "[{a:?}, {b:?}] on variable {v}");
                }
            }
        }
    }

    #[test]
    fn d_examples() {
        let n = 1;
        let dt = PolyForm::function(n, var(2)).exterior_d();
        // θ + ½(x dy − y dx)
        let mut expected = cov(n, &[2]);
        expected = &expected + &cov(n, &[1]).mul_function(&var(0).scale(&q(1, 2)));
        expected = &expected - &cov(n, &[0]).mul_function(&var(1).scale(&q(1, 2)));
        assert_eq!(dt, expected);

        let dth = cov(n, &[2]).exterior_d();
        assert_eq!(dth, PolyForm::from_covector(&MultiCovector::dtheta(n)));

        let ydx = cov(n, &[0]).mul_function(&var(1));
        assert_eq!(ydx.exterior_d(), cov(n, &[0, 1]).scale(&qi(-1)));

        let n = 2;
        let dth = cov(n, &[4]).exterior_d();
        assert_eq!(dth, PolyForm::from_covector(&MultiCovector::dtheta(n)));
    }

    #[test]
    fn weight_parts_examples() {
        let n = 1;
        let th = cov(n, &[2]);
        assert_eq!(th.d_weight_part(0), th.exterior_d());
        assert!(th.d_weight_part(1).is_zero() && th.d_weight_part(2).is_zero());

        let ydx = cov(n, &[0]).mul_function(&var(1));
        assert_eq!(ydx.d_weight_part(1), cov(n, &[0, 1]).scale(&qi(-1)));
        assert!(ydx.d_weight_part(0).is_zero() && ydx.d_weight_part(2).is_zero());

        let tdx = cov(n, &[0]).mul_function(&var(2));
        assert_eq!(tdx.d_weight_part(2), cov(n, &[2, 0]));
        // ½(x dy − y dx) ∧ dx = −½x dx∧dy
        assert_eq!(tdx.d_weight_part(1), cov(n, &[0, 1]).mul_function(&var(0).scale(&q(-1, 2))));
        assert!(tdx.d_weight_part(0).is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let n = 1;
        let ydx = cov(n, &[0]).mul_function(&var(1));
        let p = GroupPoint::new(vec![qi(0)], vec![qi(3)], qi(0)).unwrap();
        assert_eq!(ydx.evaluate_at(&p).unwrap(), MultiCovector::dx(n, 1).scale(&qi(3)));
        let dt = PolyForm::function(n, var(2)).exterior_d();
        assert_eq!(
            dt.evaluate_at(&GroupPoint::identity(1)).unwrap(),
            MultiCovector::theta(n)
        );
    }

    #[test]
    fn bump_examples() {
        let dom = BoxDomain::new(vec![qi(-1)], vec![qi(1)]).unwrap();
        let one_minus_c2 = &Polynomial::one() - &var(0).pow(2);
        assert_eq!(dom.bump(), one_minus_c2.pow(2));
        let b3 = BoxDomain::cube(3, qi(-1), qi(1)).unwrap();
        assert!(PolyForm::zero(1, 1).bump_multiply(&b3).unwrap().is_zero());
        assert!(BoxDomain::new(vec![qi(1)], vec![qi(1)]).is_err());
    }

    #[test]
    fn dilation_pullback_of_forms() {
        let n = 1;
        let two = qi(2);
        let tdx = cov(n, &[0]).mul_function(&var(2));
        // t∘𝔰₂ = 4t, dx weight 1
        assert_eq!(tdx.dilation_pullback(&two).unwrap(), tdx.scale(&qi(8)));
        // d commutes with pullback
        let a = cov(n, &[1]).mul_function(&(&var(0).pow(2) + &var(2)));
        assert_eq!(
            a.dilation_pullback(&two).unwrap().exterior_d(),
            a.exterior_d().dilation_pullback(&two).unwrap()
        );
    }

    /// Random polynomial form of the given degree for proptest.
    pub(crate) fn arb_form(n: usize, degree: usize, max_deg: u32) -> impl Strategy<Value = PolyForm> {
        let monos = crate::heis::combinations(2 * n + 1, degree);
        let nm = monos.len();
        proptest::collection::vec(
            (0..nm, proptest::collection::vec(0..=max_deg, 2 * n + 1), -3i64..=3),
            0..5,
        )
        .prop_map(move |ts| {
            let mut a = PolyForm::zero(n, degree);
            for (mi, mut e, c) in ts {
                let total: u32 = e.iter().sum();
                if total > max_deg {
                    e = vec![0; 2 * n + 1];
                }
                a.add_term(monos[mi], Polynomial::monomial(e, qi(c)));
            }
            a
        })
    }

    proptest! {
        #[test]
        fn d_squared_vanishes_n1(a in (0usize..=3).prop_flat_map(|k| arb_form(1, k, 3))) {
            prop_assert!(a.exterior_d().exterior_d().is_zero());
        }

        #[test]
        fn d_squared_vanishes_n2(a in (0usize..=5).prop_flat_map(|k| arb_form(2, k, 3))) {
            prop_assert!(a.exterior_d().exterior_d().is_zero());
        }

        #[test]
        fn weight_parts_sum_and_land(a in (0usize..=3).prop_flat_map(|k| arb_form(1, k, 3))) {
            let total = &(&a.d_weight_part(0) + &a.d_weight_part(1)) + &a.d_weight_part(2);
            prop_assert_eq!(total, a.exterior_d());
        }

        #[test]
        fn leibniz(a in arb_form(1, 1, 2), b in arb_form(1, 1, 2)) {
            let lhs = a.wedge(&b).unwrap().exterior_d();
            let rhs = &a.exterior_d().wedge(&b).unwrap() - &a.wedge(&b.exterior_d()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn stokes_on_bumped_box(a in arb_form(1, 2, 2)) {
            let dom = BoxDomain::new(vec![qi(-1), qi(0), q(-1, 2)], vec![qi(1), qi(2), qi(1)]).unwrap();
            let b = a.bump_multiply(&dom).unwrap();
            prop_assert_eq!(b.exterior_d().integrate_top(&dom).unwrap(), qi(0));
        }
    }
}
