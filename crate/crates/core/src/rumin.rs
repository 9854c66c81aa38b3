//! The Rumin complex: `d₀`, its pseudo-inverse, `Π_E₀`, `Π_E` and `d_c`.
//!
//! All operators are exact. Matrices for a given `n` are built once and
//! shared through [`RuminComplex::get`].

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::forms::{d_of_monomial, PolyForm};
use crate::heis::{Basis, GradedOperator, Monomial, MultiCovector, Space};
use crate::linalg::Matrix;
use crate::Q;

/// Largest rank with a shared cache entry.
pub const MAX_CACHED_N: usize = 8;

#[allow(clippy::declare_interior_mutable_const)]
const EMPTY: OnceLock<RuminComplex> = OnceLock::new();
static CACHE: [OnceLock<RuminComplex>; MAX_CACHED_N + 1] = [EMPTY; MAX_CACHED_N + 1];

/// Spanning set of `E₀^h` together with the projector block in degree `h`.
#[derive(Clone, Debug)]
pub struct RuminBasis {
    pub n: usize,
    pub degree: usize,
    pub elements: Vec<MultiCovector>,
    pub projector: Matrix<Q>,
}

impl RuminBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// One row of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionRow {
    pub degree: usize,
    pub dim_lambda: usize,
    pub dim_e0: usize,
    /// Smallest and largest weight of a monomial in `Λ^h`.
    pub lambda_weights: (usize, usize),
    /// Weight of `E₀^h`, which is pure.
    pub e0_weight: usize,
}

#[derive(Debug)]
pub struct RuminComplex {
    n: usize,
    dtheta_sign: i32,
    d0: GradedOperator,
    d0_pinv: GradedOperator,
    pi_e0: GradedOperator,
    lefschetz: GradedOperator,
    lefschetz_adjoint: GradedOperator,
    hodge: GradedOperator,
}

impl RuminComplex {
    pub fn new(n: usize) -> Self {
        Self::with_dtheta_sign(n, 1)
    }

    /// Builds the complex with `dθ` multiplied by `sign`. Only `+1` is
    /// correct; `−1` is a negative control for the verification suite.
    pub fn with_dtheta_sign(n: usize, sign: i32) -> Self {
        assert!(n >= 1, "rank must be at least 1");
        let top = 2 * n + 1;
        let d0 = GradedOperator::from_fn(
            n,
            Space::Full,
            |k| (k < top).then_some(k + 1),
            |a| {
                let mut out = MultiCovector::zero(n, a.degree() + 1);
                for (m, c) in a.terms() {
                    out = &out + &d_of_monomial(n, *m, sign).scale(c);
                }
                out
            },
        );
        let mut d0_pinv = GradedOperator::new(n, Space::Full);
        for (&k, b) in d0.blocks() {
            d0_pinv.insert(b.target, k, b.matrix.pseudo_inverse());
        }
        let id = GradedOperator::identity(n, Space::Full);
        let pi_e0 = id
            .sub(&d0_pinv.compose(&d0).expect("same space"))
            .and_then(|p| p.sub(&d0.compose(&d0_pinv).expect("same space")))
            .expect("compatible blocks");

        let lefschetz = GradedOperator::from_fn(
            n,
            Space::Horizontal,
            |k| Some(k + 2),
            |a| a.lefschetz_raise().expect("horizontal"),
        );
        let lefschetz_adjoint = GradedOperator::from_fn(
            n,
            Space::Horizontal,
            |k| k.checked_sub(2),
            |a| a.lefschetz_lower().expect("horizontal"),
        );
        let hodge = GradedOperator::from_fn(
            n,
            Space::Horizontal,
            |k| Some(2 * n - k),
            |a| a.hodge_star_h().expect("horizontal"),
        );
        RuminComplex {
            n,
            dtheta_sign: sign,
            d0,
            d0_pinv,
            pi_e0,
            lefschetz,
            lefschetz_adjoint,
            hodge,
        }
    }

    /// Shared instance for `n ≤ MAX_CACHED_N`, built on first use.
    pub fn get(n: usize) -> &'static RuminComplex {
        assert!(
            (1..=MAX_CACHED_N).contains(&n),
            "cached complexes exist for 1 ≤ n ≤ {MAX_CACHED_N}"
        );
        CACHE[n].get_or_init(|| RuminComplex::new(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dtheta_sign(&self) -> i32 {
        self.dtheta_sign
    }

    pub fn d0(&self) -> &GradedOperator {
        &self.d0
    }

    pub fn d0_pinv(&self) -> &GradedOperator {
        &self.d0_pinv
    }

    pub fn pi_e0(&self) -> &GradedOperator {
        &self.pi_e0
    }

    /// `L = dθ ∧ ·` on the horizontal algebra.
    pub fn lefschetz(&self) -> &GradedOperator {
        &self.lefschetz
    }

    /// `Λ`, the adjoint of `L`.
    pub fn lefschetz_adjoint(&self) -> &GradedOperator {
        &self.lefschetz_adjoint
    }

    /// Horizontal Hodge star.
    pub fn hodge(&self) -> &GradedOperator {
        &self.hodge
    }

    /// Basis of `E₀^h`: `ker L^{n−h+1}` on `Λ^h h₁` for `h ≤ n`, and
    /// `θ ∧ ker L` on `Λ^{h−1} h₁` otherwise.
    pub fn e0_basis(&self, h: usize) -> Result<RuminBasis> {
        let n = self.n;
        let top = 2 * n + 1;
        if h > top {
            return Err(Error::DegreeMismatch {
                expected: top,
                found: h,
            });
        }
        let (source, power, wrap_theta) = if h <= n {
            (h, n - h + 1, false)
        } else {
            (h - 1, 1, true)
        };
        let basis = Basis::new(n, Space::Horizontal, source);
        let lp = self.lefschetz.power(power)?;
        let kernel = match lp.block(source) {
            Some(b) => b.matrix.kernel(),
            None => (0..basis.len())
                .map(|i| {
                    let mut v = vec![Q::from_integer(0.into()); basis.len()];
                    v[i] = Q::from_integer(1.into());
                    v
                })
                .collect(),
        };
        let theta = MultiCovector::theta(n);
        let elements = kernel
            .iter()
            .map(|v| {
                let a = MultiCovector::from_vector(n, source, &basis, v);
                if wrap_theta {
                    theta.wedge(&a).expect("same rank")
                } else {
                    a
                }
            })
            .collect();
        let projector = self
            .pi_e0
            .block(h)
            .map(|b| b.matrix.clone())
            .unwrap_or_else(|| Matrix::identity(1));
        Ok(RuminBasis {
            n,
            degree: h,
            elements,
            projector,
        })
    }

    pub fn dimension_table(&self) -> Result<Vec<DimensionRow>> {
        let n = self.n;
        (0..=2 * n + 1)
            .map(|h| {
                let monos = Basis::new(n, Space::Full, h);
                let weights = monos.monomials().iter().map(|m| m.weight(n));
                let lo = weights.clone().min().unwrap_or(h);
                let hi = weights.max().unwrap_or(h);
                Ok(DimensionRow {
                    degree: h,
                    dim_lambda: monos.len(),
                    dim_e0: self.e0_basis(h)?.dim(),
                    lambda_weights: (lo, hi),
                    e0_weight: if h <= n { h } else { h + 1 },
                })
            })
            .collect()
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: n,
            });
        }
        Ok(())
    }

    pub fn exterior_d(&self, a: &PolyForm) -> PolyForm {
        a.exterior_d_signed(self.dtheta_sign)
    }

    /// `d₀⁻¹` applied coefficient-wise; zero in degree 0.
    pub fn apply_d0_pinv(&self, a: &PolyForm) -> Result<PolyForm> {
        self.check_rank(a.n())?;
        if a.degree() == 0 {
            return Ok(PolyForm::zero(self.n, 0));
        }
        a.apply_operator(&self.d0_pinv, a.degree() - 1)
    }

    /// `d₀` applied coefficient-wise.
    pub fn apply_d0(&self, a: &PolyForm) -> Result<PolyForm> {
        self.check_rank(a.n())?;
        a.apply_operator(&self.d0, a.degree() + 1)
    }

    pub fn apply_pi_e0(&self, a: &PolyForm) -> Result<PolyForm> {
        self.check_rank(a.n())?;
        a.apply_operator(&self.pi_e0, a.degree())
    }

    pub fn apply_pi_e0_covector(&self, a: &MultiCovector) -> Result<MultiCovector> {
        self.pi_e0.apply_or_zero(a, a.degree())
    }

    pub fn apply_d0_pinv_covector(&self, a: &MultiCovector) -> Result<MultiCovector> {
        if a.degree() == 0 {
            return Ok(MultiCovector::zero(self.n, 0));
        }
        self.d0_pinv.apply_or_zero(a, a.degree() - 1)
    }

    /// `Π_E α = α − d₀⁻¹ dα − d d₀⁻¹ α`.
    pub fn pi_e(&self, a: &PolyForm) -> Result<PolyForm> {
        self.check_rank(a.n())?;
        let first = self.apply_d0_pinv(&self.exterior_d(a))?;
        let mut out = a.checked_add(&-&first)?;
        if a.degree() > 0 {
            let second = self.exterior_d(&self.apply_d0_pinv(a)?);
            out = out.checked_add(&-&second)?;
        }
        Ok(out)
    }

    /// Whether `Π_E₀ γ = γ` at every point (exact, coefficient-wise).
    pub fn is_e0_section(&self, g: &PolyForm) -> Result<bool> {
        Ok(self.apply_pi_e0(g)? == *g)
    }

    /// `d_c = Π_E₀ d Π_E` on sections of `E₀`.
    pub fn d_c(&self, g: &PolyForm) -> Result<PolyForm> {
        if !self.is_e0_section(g)? {
            return Err(Error::NotRuminForm(g.to_string()));
        }
        self.d_c_unchecked(g)
    }

    pub(crate) fn d_c_unchecked(&self, g: &PolyForm) -> Result<PolyForm> {
        self.apply_pi_e0(&self.exterior_d(&self.pi_e(g)?))
    }

    /// `θ ∧ dθ^j` as a constant form.
    pub fn theta_dtheta_power(&self, j: usize) -> MultiCovector {
        let n = self.n;
        let mut dt = MultiCovector::dtheta(n);
        if self.dtheta_sign < 0 {
            dt = -&dt;
        }
        let mut acc = MultiCovector::theta(n);
        for _ in 0..j {
            acc = acc.wedge(&dt).expect("same rank");
        }
        acc
    }
}

/// `ω_I` with 0-based indices as a constant [`PolyForm`]; a test convenience.
pub fn constant_form(n: usize, indices: &[usize]) -> PolyForm {
    PolyForm::from_covector(
        &MultiCovector::wedge_of(n, indices, Q::from_integer(1.into())).expect("valid indices"),
    )
}

/// The monomial `ω_I` for sorted 0-based indices.
pub fn monomial(indices: &[usize]) -> Monomial {
    Monomial::from_sorted(indices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::{q, qi};

    fn var(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn d0_examples() {
        let rc = RuminComplex::get(1);
        let th = MultiCovector::theta(1);
        assert_eq!(rc.d0().apply(&th).unwrap().unwrap(), MultiCovector::dtheta(1));
        assert!(rc.d0().apply(&MultiCovector::dx(1, 1)).unwrap().unwrap().is_zero());
        let dxdy = MultiCovector::wedge_of(1, &[0, 1], qi(1)).unwrap();
        assert!(rc.d0().apply(&dxdy).unwrap().unwrap().is_zero());
        let thdx = MultiCovector::wedge_of(1, &[2, 0], qi(1)).unwrap();
        assert!(rc.d0().apply(&thdx).unwrap().unwrap().is_zero());
    }

    #[test]
    fn d0_pinv_examples() {
        let rc = RuminComplex::get(1);
        let p = |a: &MultiCovector| rc.apply_d0_pinv_covector(a).unwrap();
        assert_eq!(p(&MultiCovector::dtheta(1)), MultiCovector::theta(1));
        assert!(p(&MultiCovector::dx(1, 1)).is_zero());
        let dxdy = MultiCovector::wedge_of(1, &[0, 1], qi(1)).unwrap();
        assert_eq!(p(&dxdy), -&MultiCovector::theta(1));
    }

    #[test]
    fn d0_pinv_is_moore_penrose_oracle() {
        // independent oracle: A⁺ = (AᵀA)⁺Aᵀ checked through the Penrose equations
        for n in 1..=2 {
            let rc = RuminComplex::get(n);
            for (k, b) in rc.d0().blocks() {
                let a = &b.matrix;
                let p = &rc.d0_pinv().block(b.target).unwrap().matrix;
                assert_eq!(&a.matmul(p).matmul(a), a, "degree {k}");
                assert_eq!(&p.matmul(a).matmul(p), p);
                let ap = a.matmul(p);
                assert_eq!(ap.transpose(), ap);
                let pa = p.matmul(a);
                assert_eq!(pa.transpose(), pa);
            }
        }
    }

    #[test]
    fn d0_pinv_values_are_vertical() {
        for n in 1..=3 {
            let rc = RuminComplex::get(n);
            for (_, b) in rc.d0_pinv().blocks() {
                for (j, _) in b.source_basis.monomials().iter().enumerate() {
                    for (i, m) in b.target_basis.monomials().iter().enumerate() {
                        if !b.matrix[(i, j)].eq(&qi(0)) {
                            assert!(m.has_theta(n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pi_e0_examples() {
        let rc = RuminComplex::get(1);
        assert!(rc.apply_pi_e0_covector(&MultiCovector::theta(1)).unwrap().is_zero());
        assert_eq!(
            rc.apply_pi_e0_covector(&MultiCovector::dx(1, 1)).unwrap(),
            MultiCovector::dx(1, 1)
        );
        let rc = RuminComplex::get(2);
        let a = MultiCovector::wedge_of(2, &[0, 2], qi(1)).unwrap();
        let b = MultiCovector::wedge_of(2, &[1, 3], qi(1)).unwrap();
        assert_eq!(rc.apply_pi_e0_covector(&a).unwrap(), (&a - &b).scale(&q(1, 2)));
    }

    #[test]
    fn pi_e0_projector_laws() {
        for n in 1..=3 {
            let p = RuminComplex::get(n).pi_e0();
            assert!(p.compose(p).unwrap().equals(p));
            assert!(p.adjoint().equals(p));
        }
    }

    #[test]
    fn e0_dimensions() {
        let dims = |n: usize| -> Vec<usize> {
            let rc = RuminComplex::get(n);
            (0..=2 * n + 1).map(|h| rc.e0_basis(h).unwrap().dim()).collect()
        };
        assert_eq!(dims(1), vec![1, 2, 2, 1]);
        assert_eq!(dims(2), vec![1, 4, 5, 5, 4, 1]);
        let rc = RuminComplex::get(3);
        for h in 0..=7 {
            let b = rc.e0_basis(h).unwrap();
            assert_eq!(b.dim(), rc.pi_e0().rank(h));
            for e in &b.elements {
                assert_eq!(e.is_horizontal(), h <= 3);
                assert_eq!(rc.apply_pi_e0_covector(e).unwrap(), *e);
            }
        }
        assert_eq!(RuminComplex::get(2).e0_basis(0).unwrap().elements, vec![MultiCovector::one(2)]);
    }

    #[test]
    fn pi_e_examples() {
        let rc = RuminComplex::get(1);
        let th = constant_form(1, &[2]);
        assert!(rc.pi_e(&th).unwrap().is_zero());
        let dx = constant_form(1, &[0]);
        assert_eq!(rc.pi_e(&dx).unwrap(), dx);
        let ydx = dx.mul_function(&var(1));
        assert_eq!(rc.pi_e(&ydx).unwrap(), &ydx - &th);
        let x2dy = constant_form(1, &[1]).mul_function(&var(0).pow(2));
        let expected = &x2dy + &th.mul_function(&var(0).scale(&qi(2)));
        assert_eq!(rc.pi_e(&x2dy).unwrap(), expected);
    }

    #[test]
    fn d_c_examples() {
        let rc = RuminComplex::get(1);
        let t = PolyForm::function(1, var(2));
        let expected = &constant_form(1, &[1]).mul_function(&var(0).scale(&q(1, 2)))
            - &constant_form(1, &[0]).mul_function(&var(1).scale(&q(1, 2)));
        assert_eq!(rc.d_c(&t).unwrap(), expected);
        let ydx = constant_form(1, &[0]).mul_function(&var(1));
        assert!(rc.d_c(&ydx).unwrap().is_zero());
        let x2dy = constant_form(1, &[1]).mul_function(&var(0).pow(2));
        assert_eq!(rc.d_c(&x2dy).unwrap(), constant_form(1, &[0, 2]).scale(&qi(2)));
        assert!(matches!(
            rc.d_c(&constant_form(1, &[2])),
            Err(Error::NotRuminForm(_))
        ));
    }

    #[test]
    fn dimension_table_rows() {
        let rows = RuminComplex::get(1).dimension_table().unwrap();
        let lam: Vec<usize> = rows.iter().map(|r| r.dim_lambda).collect();
        assert_eq!(lam, vec![1, 3, 3, 1]);
        assert_eq!(rows[1].lambda_weights, (1, 2));
        assert_eq!(rows[2].e0_weight, 3);
    }
}
