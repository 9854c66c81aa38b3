use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{BoxDomain, PolyForm};
use crate::rumin::RuminComplex;
use crate::Q;

use super::chain::Chain;
use super::pairing::{pair_chain, PairValue};

/// A current represented by a polynomial form `α` over a box:
/// `⟨𝔉𝔉(α), ω⟩ = ∫_box α∧ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothCurrent {
    form: PolyForm,
    domain: BoxDomain,
}

impl SmoothCurrent {
    pub fn new(form: PolyForm, domain: BoxDomain) -> Result<Self> {
        let top = 2 * form.n() + 1;
        if domain.dim() != top {
            return Err(Error::DegenerateBox(format!(
                "box has dimension {}, expected {top}",
                domain.dim()
            )));
        }
        Ok(SmoothCurrent { form, domain })
    }

    pub fn form(&self) -> &PolyForm {
        &self.form
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    /// Dimension `2n + 1 − h` of the current.
    pub fn dim(&self) -> usize {
        2 * self.n() + 1 - self.form.degree()
    }

    pub fn with_form(&self, form: PolyForm) -> Self {
        SmoothCurrent {
            form,
            domain: self.domain.clone(),
        }
    }
}

/// `∫_box α∧ω` for complementary degrees.
pub fn ff_pair(s: &SmoothCurrent, omega: &PolyForm) -> Result<Q> {
    if omega.n() != s.n() {
        return Err(Error::RankMismatch {
            left: s.n(),
            right: omega.n(),
        });
    }
    if omega.degree() != s.dim() {
        return Err(Error::DegreeMismatch {
            expected: s.dim(),
            found: omega.degree(),
        });
    }
    s.form.wedge(omega)?.integrate_top(&s.domain)
}

/// A current as a pairing functional, built from chains and form
/// representatives by the operations of the Rumin/de Rham correspondence.
///
/// Federer–Fleming side functionals accept arbitrary test forms; Rumin side
/// ones (`RuminSmooth`, `RuminBoundary`, `Hat`) expect sections of `E₀`.
#[derive(Clone, Debug)]
pub enum Current {
    Chain(Chain),
    /// `𝔉𝔉(α)`.
    Smooth(SmoothCurrent),
    /// `𝔯u(β)`: `γ ↦ ∫ β∧γ`.
    RuminSmooth(SmoothCurrent),
    /// `ω ↦ ⟨T, dω⟩`.
    Boundary(Box<Current>),
    /// `γ ↦ ⟨T, d_c γ⟩`.
    RuminBoundary(Box<Current>),
    /// `𝔅T: ω ↦ ⟨T, d₀⁻¹ω⟩`.
    B(Box<Current>),
    /// `T̃: ω ↦ ⟨T, Π_E₀ ω⟩`.
    Tilde(Box<Current>),
    /// `T̂: γ ↦ ⟨T, Π_E γ⟩`.
    Hat(Box<Current>),
    /// `Σ cᵢ Tᵢ`, all of dimension `dim`.
    Combination {
        n: usize,
        dim: usize,
        terms: Vec<(Q, Current)>,
    },
}

impl Current {
    pub fn zero(n: usize, dim: usize) -> Self {
        Current::Combination {
            n,
            dim,
            terms: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Current::Chain(c) => c.n(),
            Current::Smooth(s) | Current::RuminSmooth(s) => s.n(),
            Current::Boundary(t)
            | Current::RuminBoundary(t)
            | Current::B(t)
            | Current::Tilde(t)
            | Current::Hat(t) => t.n(),
            Current::Combination { n, .. } => *n,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Current::Chain(c) => c.dim(),
            Current::Smooth(s) | Current::RuminSmooth(s) => s.dim(),
            Current::Boundary(t) | Current::RuminBoundary(t) => t.dim().saturating_sub(1),
            Current::B(t) => t.dim() + 1,
            Current::Tilde(t) | Current::Hat(t) => t.dim(),
            Current::Combination { dim, .. } => *dim,
        }
    }

    pub fn boundary(self) -> Current {
        Current::Boundary(Box::new(self))
    }

    pub fn rumin_boundary(self) -> Current {
        Current::RuminBoundary(Box::new(self))
    }

    pub fn scaled(self, c: Q) -> Current {
        let (n, dim) = (self.n(), self.dim());
        Current::Combination {
            n,
            dim,
            terms: vec![(c, self)],
        }
    }

    /// `Σ cᵢ Tᵢ`; the terms must share `n` and dimension.
    pub fn combination(n: usize, dim: usize, terms: Vec<(Q, Current)>) -> Result<Current> {
        for (_, t) in &terms {
            if t.n() != n {
                return Err(Error::RankMismatch { left: n, right: t.n() });
            }
            if t.dim() != dim {
                return Err(Error::DegreeMismatch {
                    expected: dim,
                    found: t.dim(),
                });
            }
        }
        Ok(Current::Combination { n, dim, terms })
    }

    /// `⟨T, ω⟩`.
    pub fn pair(&self, omega: &PolyForm) -> Result<PairValue> {
        let n = self.n();
        if omega.n() != n {
            return Err(Error::RankMismatch {
                left: n,
                right: omega.n(),
            });
        }
        if omega.degree() != self.dim() {
            return Err(Error::DegreeMismatch {
                expected: self.dim(),
                found: omega.degree(),
            });
        }
        let rc = RuminComplex::get(n);
        match self {
            Current::Chain(c) => pair_chain(c, omega),
            Current::Smooth(s) | Current::RuminSmooth(s) => Ok(PairValue::Exact(ff_pair(s, omega)?)),
            Current::Boundary(t) => t.pair(&omega.exterior_d()),
            Current::RuminBoundary(t) => t.pair(&rc.d_c(omega)?),
            Current::B(t) => {
                if omega.degree() == 0 {
                    return Err(Error::DegreeMismatch {
                        expected: 1,
                        found: 0,
                    });
                }
                t.pair(&rc.apply_d0_pinv(omega)?)
            }
            Current::Tilde(t) => t.pair(&rc.apply_pi_e0(omega)?),
            Current::Hat(t) => t.pair(&rc.pi_e(omega)?),
            Current::Combination { terms, .. } => {
                let mut acc = PairValue::zero();
                for (c, t) in terms {
                    acc = acc.add(&t.pair(omega)?.scale(c));
                }
                Ok(acc)
            }
        }
    }
}

/// `𝔅T`, of dimension `dim T + 1`.
pub fn b_operator(t: Current) -> Result<Current> {
    if t.dim() + 1 > 2 * t.n() + 1 {
        return Err(Error::DegreeMismatch {
            expected: 2 * t.n(),
            found: t.dim(),
        });
    }
    Ok(Current::B(Box::new(t)))
}

fn high_branch_error(what: &str) -> Error {
    Error::Unsupported(format!(
        "{what} above the middle dimension acts on representing forms; pass a form-represented current"
    ))
}

/// Rumin side to Federer–Fleming side.
///
/// For `k ≤ n` the test form is projected by `Π_E₀`; for `k > n` the
/// representing form is mapped by `Π_E`.
pub fn tilde(t: Current) -> Result<Current> {
    let n = t.n();
    if t.dim() <= n {
        return Ok(Current::Tilde(Box::new(t)));
    }
    let rc = RuminComplex::get(n);
    match t {
        Current::RuminSmooth(s) => Ok(Current::Smooth(s.with_form(rc.pi_e(s.form())?))),
        Current::Combination { n, dim, terms } => {
            let terms = terms
                .into_iter()
                .map(|(c, t)| Ok((c, tilde(t)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Current::Combination { n, dim, terms })
        }
        _ => Err(high_branch_error("tilde")),
    }
}

/// Federer–Fleming side to Rumin side.
///
/// For `k ≤ n` the test form is mapped by `Π_E`; for `k > n` the
/// representing form is projected by `Π_E₀`.
pub fn hat(t: Current) -> Result<Current> {
    let n = t.n();
    if t.dim() <= n {
        return Ok(Current::Hat(Box::new(t)));
    }
    let rc = RuminComplex::get(n);
    match t {
        Current::Smooth(s) => Ok(Current::RuminSmooth(s.with_form(rc.apply_pi_e0(s.form())?))),
        Current::Combination { n, dim, terms } => {
            let terms = terms
                .into_iter()
                .map(|(c, t)| Ok((c, hat(t)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Current::Combination { n, dim, terms })
        }
        _ => Err(high_branch_error("hat")),
    }
}

/// `𝔉𝔉(Π_E α)`, which pairs as `T − ∂𝔅T − 𝔅∂T`.
pub fn oblique_correction(s: &SmoothCurrent) -> Result<SmoothCurrent> {
    let rc = RuminComplex::get(s.n());
    Ok(s.with_form(rc.pi_e(s.form())?))
}

/// `T − ∂𝔅T − 𝔅∂T` as a functional.
pub fn oblique_correction_functional(t: Current) -> Result<Current> {
    let (n, dim) = (t.n(), t.dim());
    let one = Q::from_integer(1.into());
    let mut terms = vec![(one.clone(), t.clone())];
    if dim < 2 * n + 1 {
        terms.push((-one.clone(), b_operator(t.clone())?.boundary()));
    }
    if dim > 0 {
        terms.push((-one, b_operator(t.boundary())?));
    }
    Current::combination(n, dim, terms)
}

/// `⟨T, ω⟩` as an exact rational; errors when the pairing needed quadrature.
pub fn pair_exact(t: &Current, omega: &PolyForm) -> Result<Q> {
    match t.pair(omega)? {
        PairValue::Exact(q) => Ok(q),
        PairValue::Approx(x) => Err(Error::NotExact(format!("pairing evaluated by quadrature: {x}"))),
    }
}

/// Whether two functionals agree exactly on every test form given.
pub fn agree_on(a: &Current, b: &Current, tests: &[PolyForm]) -> Result<bool> {
    for w in tests {
        let d = pair_exact(a, w)? - pair_exact(b, w)?;
        if !d.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::chain::{Domain, ParamSimplex};
    use crate::expr::parse_form;
    use crate::sampling::{random_box, random_e0_section, random_form, rng};
    use crate::{q, qi};

    fn cube(n: usize) -> BoxDomain {
        BoxDomain::cube(2 * n + 1, qi(-1), qi(1)).unwrap()
    }

    fn bumped(r: &mut crate::sampling::Rng64, n: usize, k: usize, dom: &BoxDomain) -> PolyForm {
        random_form(r, n, k, 2).bump_multiply(dom).unwrap()
    }

    #[test]
    fn ff_pair_examples() {
        let a = SmoothCurrent::new(parse_form("theta^dx", 1).unwrap(), cube(1)).unwrap();
        // θ∧dx∧dy = dx∧dy∧θ
        assert_eq!(ff_pair(&a, &parse_form("dy", 1).unwrap()).unwrap(), qi(8));
        let z = SmoothCurrent::new(PolyForm::zero(1, 2), cube(1)).unwrap();
        assert_eq!(ff_pair(&z, &parse_form("x*dy", 1).unwrap()).unwrap(), qi(0));
        assert!(ff_pair(&a, &parse_form("dx^dy", 1).unwrap()).is_err());
    }

    #[test]
    fn b_operator_examples() {
        let vseg = Current::Chain(Chain::single(
            ParamSimplex::parse(1, Domain::Cube, &["0", "0", "u1"]).unwrap(),
        ));
        let b = b_operator(vseg).unwrap();
        assert_eq!(b.dim(), 2);
        let dtheta = PolyForm::from_covector(&crate::MultiCovector::dtheta(1));
        assert_eq!(pair_exact(&b, &dtheta).unwrap(), qi(1));
        assert_eq!(pair_exact(&b, &parse_form("dx^dy", 1).unwrap()).unwrap(), qi(-1));
        let hseg = Current::Chain(Chain::single(
            ParamSimplex::parse(1, Domain::Cube, &["u1", "0", "0"]).unwrap(),
        ));
        assert_eq!(pair_exact(&b_operator(hseg).unwrap(), &dtheta).unwrap(), qi(0));
    }

    #[test]
    fn b_of_smooth_is_smooth_of_pinv() {
        let mut r = rng(21);
        for n in 1..=2 {
            let rc = RuminComplex::get(n);
            for h in 1..=2 * n + 1 {
                let dom = random_box(&mut r, 2 * n + 1);
                let alpha = random_form(&mut r, n, h, 2);
                let s = SmoothCurrent::new(alpha.clone(), dom.clone()).unwrap();
                if s.dim() == 2 * n + 1 {
                    continue;
                }
                let lhs = b_operator(Current::Smooth(s.clone())).unwrap();
                let sign = if h % 2 == 0 { qi(1) } else { qi(-1) };
                let rhs = Current::Smooth(s.with_form(rc.apply_d0_pinv(&alpha).unwrap())).scaled(sign);
                let tests: Vec<_> = (0..3).map(|_| bumped(&mut r, n, lhs.dim(), &dom)).collect();
                assert!(agree_on(&lhs, &rhs, &tests).unwrap(), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn boundary_of_smooth_current() {
        // ∂𝔉𝔉(α) = (−1)^k 𝔉𝔉(dα) on forms vanishing at the box boundary
        let mut r = rng(5);
        for n in 1..=2 {
            for h in 0..2 * n + 1 {
                let dom = random_box(&mut r, 2 * n + 1);
                let alpha = random_form(&mut r, n, h, 3);
                let s = SmoothCurrent::new(alpha.clone(), dom.clone()).unwrap();
                let k = s.dim();
                let sign = if k.is_multiple_of(2) { qi(1) } else { qi(-1) };
                let lhs = Current::Smooth(s.clone()).boundary();
                let rhs = Current::Smooth(s.with_form(alpha.exterior_d())).scaled(sign);
                let tests: Vec<_> = (0..3).map(|_| bumped(&mut r, n, k - 1, &dom)).collect();
                assert!(agree_on(&lhs, &rhs, &tests).unwrap());
            }
        }
    }

    #[test]
    fn oblique_correction_examples() {
        let rc = RuminComplex::get(1);
        let s = SmoothCurrent::new(parse_form("(1 + y^2)*dy", 1).unwrap(), cube(1)).unwrap();
        assert_eq!(oblique_correction(&s).unwrap(), s);
        let th = SmoothCurrent::new(parse_form("theta", 1).unwrap(), cube(1)).unwrap();
        assert!(oblique_correction(&th).unwrap().form().is_zero());
        let ydx = SmoothCurrent::new(parse_form("y*dx", 1).unwrap(), cube(1)).unwrap();
        assert_eq!(
            oblique_correction(&ydx).unwrap().form(),
            &parse_form("y*dx - theta", 1).unwrap()
        );
        assert!(rc.pi_e(s.form()).is_ok());
    }

    #[test]
    fn oblique_correction_pairing_identity() {
        let mut r = rng(8);
        for n in 1..=2 {
            for h in 0..=2 * n + 1 {
                let dom = random_box(&mut r, 2 * n + 1);
                let s = SmoothCurrent::new(random_form(&mut r, n, h, 2), dom.clone()).unwrap();
                let lhs = Current::Smooth(oblique_correction(&s).unwrap());
                let rhs = oblique_correction_functional(Current::Smooth(s.clone())).unwrap();
                let tests: Vec<_> = (0..2).map(|_| bumped(&mut r, n, s.dim(), &dom)).collect();
                assert!(agree_on(&lhs, &rhs, &tests).unwrap(), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn correspondences_low_branch() {
        let seg = Current::Chain(Chain::single(
            ParamSimplex::parse(1, Domain::Cube, &["u1", "u1^2", "u1^3/6"]).unwrap(),
        ));
        let back = tilde(hat(seg.clone()).unwrap()).unwrap();
        let mut r = rng(2);
        let dom = BoxDomain::cube(3, qi(-2), qi(2)).unwrap();
        let tests: Vec<_> = (0..5).map(|_| bumped(&mut r, 1, 1, &dom)).collect();
        assert!(agree_on(&back, &seg, &tests).unwrap());
        // a non-horizontal segment is not recovered
        let vseg = Current::Chain(Chain::single(
            ParamSimplex::parse(1, Domain::Cube, &["0", "0", "u1"]).unwrap(),
        ));
        let back = tilde(hat(vseg.clone()).unwrap()).unwrap();
        let theta = PolyForm::from_covector(&crate::MultiCovector::theta(1));
        assert_ne!(pair_exact(&back, &theta).unwrap(), pair_exact(&vseg, &theta).unwrap());
        let zero = tilde(Current::zero(1, 1)).unwrap();
        assert_eq!(pair_exact(&zero, &theta).unwrap(), qi(0));
    }

    #[test]
    fn correspondences_high_branch() {
        let rc = RuminComplex::get(1);
        let s = SmoothCurrent::new(parse_form("(2 - y + y^3)*dy", 1).unwrap(), cube(1)).unwrap();
        let back = tilde(hat(Current::Smooth(s.clone())).unwrap()).unwrap();
        match back {
            Current::Smooth(b) => assert_eq!(b.form(), s.form()),
            other => panic!("unexpected {other:?}"),
        }
        let mut r = rng(4);
        let beta = random_e0_section(&mut r, rc, 1, 2);
        let rs = SmoothCurrent::new(beta.clone(), cube(1)).unwrap();
        match hat(tilde(Current::RuminSmooth(rs)).unwrap()).unwrap() {
            Current::RuminSmooth(b) => assert_eq!(b.form(), &beta),
            other => panic!("unexpected {other:?}"),
        }
        let chain = Current::Chain(Chain::single(
            ParamSimplex::parse(2, Domain::Cube, &["u1", "0", "u2"]).unwrap(),
        ));
        assert!(matches!(hat(chain), Err(Error::Unsupported(_))));
        let _ = q(1, 2);
    }
}
