//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are plain indices. For coefficients of forms on ℍⁿ the
//! convention is `x₁..xₙ = 0..n`, `y₁..yₙ = n..2n`, `t = 2n`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Q;

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal
/// regardless of how many variables are in scope.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, Q>,
}

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_at(e: &Exponents, i: usize) -> u32 {
    e.get(i).copied().unwrap_or(0)
}

impl Polynomial {
    pub fn constant(c: Q) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exps: Exponents, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(trim(exps), c);
        p
    }

    fn add_term(&mut self, e: Exponents, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms
            .get(&trim(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    /// Constant term.
    pub fn constant_term(&self) -> Q {
        self.coeff(&[])
    }

    /// One past the largest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree with variable `i` carrying weight `weights(i)`.
    pub fn weighted_degree(&self, weights: impl Fn(usize) -> u32) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().enumerate().map(|(i, &k)| k * weights(i)).sum())
            .max()
    }

    /// Lowest weighted degree among the terms.
    pub fn min_weighted_degree(&self, weights: impl Fn(usize) -> u32) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().enumerate().map(|(i, &k)| k * weights(i)).sum())
            .min()
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = exp_at(e, i);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(trim(e2), c * Q::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = crate::to_f64(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= point[i].powi(k as i32);
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `subs[i]` for variable `i`.
    pub fn compose(&self, subs: &[Polynomial]) -> Self {
        let mut out = Self::zero();
        let mut cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, k))
                    .or_insert_with(|| subs[i].pow(k))
                    .clone();
                term = &term * &p;
            }
            out += term;
        }
        out
    }

    /// Exact integral over the box `Π [aᵢ, bᵢ]`; variables beyond `bounds` must not occur.
    pub fn integrate_box(&self, bounds: &[(Q, Q)]) -> Q {
        assert!(self.num_vars() <= bounds.len(), "variable outside the box");
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, (a, b)) in bounds.iter().enumerate() {
                let k = exp_at(e, i) as usize + 1;
                let kq = Q::from_integer(BigInt::from(k));
                term *= (num_traits::pow(b.clone(), k) - num_traits::pow(a.clone(), k)) / kq;
            }
            total += term;
        }
        total
    }

    /// Exact integral over the standard simplex `{u ≥ 0, Σu ≤ 1}` in `k` variables,
    /// via `∫ uᵃ = Π aᵢ! / (|a| + k)!`.
    pub fn integrate_simplex(&self, k: usize) -> Q {
        assert!(self.num_vars() <= k, "variable outside the simplex");
        let fact = |m: u64| (1..=m).fold(BigInt::one(), |a, i| a * BigInt::from(i));
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut num = BigInt::one();
            let mut sum = 0u64;
            for i in 0..k {
                let a = exp_at(e, i) as u64;
                num *= fact(a);
                sum += a;
            }
            total += c * Q::new(num, fact(sum + k as u64));
        }
        total
    }

    /// Formats with a caller-supplied variable naming.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        name(i)
                    } else {
                        format!("{}^{k}", name(i))
                    }
                })
                .collect();
            if vars.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&format!("{mag}*"));
                }
                s.push_str(&vars.join("*"));
            }
        }
        s
    }

    /// Formats with the ℍⁿ names `x1.., y1.., t`.
    pub fn display_heis(&self, n: usize) -> String {
        self.display_with(|i| coordinate_name(n, i))
    }
}

pub fn coordinate_name(n: usize, i: usize) -> String {
    if i < n {
        format!("x{}", i + 1)
    } else if i < 2 * n {
        format!("y{}", i - n + 1)
    } else if i == 2 * n {
        "t".into()
    } else {
        format!("v{i}")
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(Q::one())
    }
}

impl From<Q> for Polynomial {
    fn from(c: Q) -> Self {
        Polynomial::constant(c)
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let len = e1.len().max(e2.len());
                let e: Exponents = (0..len).map(|i| exp_at(e1, i) + exp_at(e2, i)).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|i| format!("z{i}")))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};
    use proptest::prelude::*;

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn y() -> Polynomial {
        Polynomial::var(1)
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p, &x().pow(2) - &y().pow(2));
        assert!((&p - &p).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::monomial(vec![1, 0, 0], qi(1)), x());
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x().pow(3).scale(&qi(2)) + &(&x() * &y());
        assert_eq!(p.derivative(0), &x().pow(2).scale(&qi(6)) + &y());
        assert_eq!(p.derivative(2), Polynomial::zero());
        assert_eq!(p.eval(&[qi(1), qi(2)]), qi(4));
        assert!((p.eval_f64(&[0.5, 2.0]) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn compose_substitutes() {
        // p(x, y) = x y, x ↦ y + 1, y ↦ 2
        let p = &x() * &y();
        let r = p.compose(&[&y() + &Polynomial::one(), Polynomial::constant(qi(2))]);
        assert_eq!(r, &y().scale(&qi(2)) + &Polynomial::constant(qi(2)));
    }

    #[test]
    fn box_and_simplex_integrals() {
        let p = &x().pow(2) + &y();
        let b = [(qi(0), qi(1)), (qi(-1), qi(2))];
        // ∫∫ x² + y = 3·(1/3) + (1)·(4−1)/2
        assert_eq!(p.integrate_box(&b), qi(1) + q(3, 2));
        assert_eq!(Polynomial::one().integrate_simplex(2), q(1, 2));
        assert_eq!(x().integrate_simplex(2), q(1, 6));
        assert_eq!((&x() * &y()).integrate_simplex(2), q(1, 24));
        assert_eq!(Polynomial::one().integrate_simplex(3), q(1, 6));
    }

    #[test]
    fn weighted_degree_and_display() {
        let t = Polynomial::var(2);
        let p = &(&x() * &t) + &y();
        let w = |i: usize| if i == 2 { 2 } else { 1 };
        assert_eq!(p.weighted_degree(w), Some(3));
        assert_eq!(p.min_weighted_degree(w), Some(1));
        assert_eq!(p.scale(&q(-1, 2)).display_heis(1), "-1/2*x1*t - 1/2*y1");
    }

    fn poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..5), 0..5).prop_map(|ts| {
            let mut p = Polynomial::zero();
            for ((a, b, c), k) in ts {
                p += Polynomial::monomial(vec![a, b, c], qi(k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(!(&a - &a).terms().any(|(_, c)| c.is_zero()));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz_rule(a in poly(), b in poly(), i in 0usize..3) {
            let lhs = (&a * &b).derivative(i);
            let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_ring_map(a in poly(), b in poly(), p in proptest::collection::vec(-4i64..4, 3)) {
            let pt: Vec<Q> = p.into_iter().map(qi).collect();
            prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
            prop_assert_eq!((&a + &b).eval(&pt), a.eval(&pt) + b.eval(&pt));
        }

        #[test]
        fn fundamental_theorem_on_box(a in poly()) {
            // ∫ ∂ₓ a dx over [0,1] equals a(1,·) − a(0,·)
            let b = [(qi(0), qi(1)), (qi(0), qi(1)), (qi(0), qi(1))];
            let lhs = a.derivative(0).integrate_box(&b);
            let at = |v: i64| a.compose(&[
                Polynomial::constant(qi(v)), Polynomial::var(1), Polynomial::var(2)
            ]);
            let rhs = (&at(1) - &at(0)).integrate_box(&b);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
