use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::PolyForm;
use crate::heis::Monomial;
use crate::poly::Polynomial;
use crate::quadrature::ESTIMATE_ORDER_STEP;
use crate::{to_f64, Q};

use super::chain::{minors, Chain, Domain, ParamSimplex};

/// Result of a pairing: exact when every ingredient was polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum PairValue {
    Exact(Q),
    Approx(f64),
}

impl PairValue {
    pub fn zero() -> Self {
        PairValue::Exact(Q::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            PairValue::Exact(q) => to_f64(q),
            PairValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Q> {
        match self {
            PairValue::Exact(q) => Some(q),
            PairValue::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PairValue::Exact(_))
    }

    pub fn add(&self, other: &PairValue) -> PairValue {
        match (self, other) {
            (PairValue::Exact(a), PairValue::Exact(b)) => PairValue::Exact(a + b),
            _ => PairValue::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn scale(&self, s: &Q) -> PairValue {
        match self {
            PairValue::Exact(a) => PairValue::Exact(a * s),
            PairValue::Approx(x) => PairValue::Approx(x * to_f64(s)),
        }
    }
}

impl fmt::Display for PairValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairValue::Exact(q) => write!(f, "{q}"),
            PairValue::Approx(x) => write!(f, "{x:.17e}"),
        }
    }
}

fn check(n: usize, dim: usize, omega: &PolyForm) -> Result<()> {
    if omega.n() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: omega.n(),
        });
    }
    if omega.degree() != dim {
        return Err(Error::DegreeMismatch {
            expected: dim,
            found: omega.degree(),
        });
    }
    Ok(())
}

/// Pulled-back integrand `Σ_I f_I(F(u)) m_I(u)` as a polynomial in `u`.
pub fn pullback_polynomial(s: &ParamSimplex, omega: &PolyForm) -> Option<Polynomial> {
    let map = s.polynomial_map()?;
    let jac = s.frame_jacobian_poly()?;
    let mut out = Polynomial::zero();
    if omega.is_zero() {
        return Some(out);
    }
    for (m, minor) in minors(&jac) {
        let f = omega.coeff(m);
        if f.is_zero() || minor.is_zero() {
            continue;
        }
        out += &f.compose(map) * &minor;
    }
    Some(out)
}

pub(crate) fn integrate_reference(p: &Polynomial, dim: usize, domain: Domain) -> Q {
    match domain {
        Domain::Cube => p.integrate_box(&vec![(Q::zero(), Q::from_integer(1.into())); dim]),
        Domain::Simplex => p.integrate_simplex(dim),
    }
}

/// `∫ F*ω` on one simplex, exact for polynomial maps.
pub fn pair_simplex(s: &ParamSimplex, omega: &PolyForm) -> Result<PairValue> {
    check(s.n(), s.dim(), omega)?;
    match pullback_polynomial(s, omega) {
        Some(p) => Ok(PairValue::Exact(integrate_reference(&p, s.dim(), s.domain()))),
        None => Ok(PairValue::Approx(pair_simplex_numeric(s, omega, s.quadrature_order())?)),
    }
}

/// Quadrature value of `∫ F*ω` with `order` nodes per axis.
pub fn pair_simplex_numeric(s: &ParamSimplex, omega: &PolyForm, order: usize) -> Result<f64> {
    check(s.n(), s.dim(), omega)?;
    if omega.is_zero() {
        return Ok(0.0);
    }
    let rule = s.rule(order);
    Ok(rule.integrate(|u| {
        let coords = s.eval(u);
        let values: HashMap<Monomial, f64> = omega.evaluate_f64(&coords).into_iter().collect();
        minors(&s.frame_jacobian(u))
            .iter()
            .map(|(m, v)| values.get(m).map_or(0.0, |c| c * v))
            .sum()
    }))
}

/// `Σ |aᵢ| ∫ Σ_I |f_I m_I|`, a scale for float tolerances.
pub fn pair_chain_abs(t: &Chain, omega: &PolyForm) -> Result<f64> {
    check(t.n(), t.dim(), omega)?;
    let mut acc = 0.0;
    for (a, s) in t.simplices() {
        let rule = s.rule(s.quadrature_order());
        acc += a.unsigned_abs() as f64
            * rule.integrate(|u| {
                let values: HashMap<Monomial, f64> = omega.evaluate_f64(&s.eval(u)).into_iter().collect();
                minors(&s.frame_jacobian(u))
                    .iter()
                    .map(|(m, v)| values.get(m).map_or(0.0, |c| (c * v).abs()))
                    .sum()
            });
    }
    Ok(acc)
}

/// `⟨T, ω⟩ = Σ aᵢ ∫ Fᵢ*ω`.
pub fn pair_chain(t: &Chain, omega: &PolyForm) -> Result<PairValue> {
    check(t.n(), t.dim(), omega)?;
    let mut acc = PairValue::zero();
    for (a, s) in t.simplices() {
        let v = pair_simplex(s, omega)?;
        acc = acc.add(&v.scale(&Q::from_integer((*a).into())));
    }
    Ok(acc)
}

/// Quadrature-only pairing, with `|order q − order q+4|` as error estimate.
pub fn pair_chain_numeric(t: &Chain, omega: &PolyForm) -> Result<(f64, f64)> {
    check(t.n(), t.dim(), omega)?;
    let mut value = 0.0;
    let mut finer = 0.0;
    for (a, s) in t.simplices() {
        let q = s.quadrature_order();
        value += *a as f64 * pair_simplex_numeric(s, omega, q)?;
        finer += *a as f64 * pair_simplex_numeric(s, omega, q + ESTIMATE_ORDER_STEP)?;
    }
    Ok((value, (value - finer).abs()))
}
