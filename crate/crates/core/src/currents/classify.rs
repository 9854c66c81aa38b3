use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::forms::{BoxDomain, PolyForm};
use crate::heis::{combinations, Basis, Monomial, MultiCovector, Space};
use crate::poly::Polynomial;
use crate::rumin::RuminComplex;
use crate::sampling::{random_polynomial, rng};
use crate::{to_f64, Q};

use super::chain::{minors, Chain, ParamSimplex};
use super::pairing::{integrate_reference, pair_chain, pair_chain_abs};
use super::smooth::SmoothCurrent;

/// Outcome of one defining restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    /// The restricting form has degree above the dimension of the current.
    VacuouslyTrue,
    /// The notion is only defined in another dimension range.
    NotApplicable,
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::VacuouslyTrue)
    }

    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::NotApplicable, _) | (_, Verdict::NotApplicable) => Verdict::NotApplicable,
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Holds, _) | (_, Verdict::Holds) => Verdict::Holds,
            _ => Verdict::VacuouslyTrue,
        }
    }

    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "true",
            Verdict::Fails => "false",
            Verdict::VacuouslyTrue => "vacuously true",
            Verdict::NotApplicable => "n/a",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub horizontal: Verdict,
    pub vertical: Verdict,
    pub co_legendrian: Verdict,
    pub oblique: Verdict,
    /// Largest pointwise residual of `θ` and `dθ` (0 on the exact path).
    pub max_residual: f64,
    /// Tolerance applied to those residuals (0 on the exact path).
    pub tolerance: f64,
}

/// Restricting forms of the definitions, each as a constant covector.
fn restrictions(n: usize, k: usize) -> (Vec<MultiCovector>, Option<MultiCovector>, Option<MultiCovector>) {
    let rc = RuminComplex::get(n);
    let horizontal = vec![MultiCovector::theta(n), MultiCovector::dtheta(n)];
    let (co, co_boundary) = if k > n {
        let c = rc.theta_dtheta_power(k - n);
        let b = rc.theta_dtheta_power(k - n - 1);
        (Some(c), Some(b))
    } else {
        (None, None)
    };
    (horizontal, co, co_boundary)
}

/// Unit horizontal monomials of degree `k`, the test covectors of verticality.
fn horizontal_monomials(n: usize, k: usize) -> Vec<MultiCovector> {
    Basis::new(n, Space::Horizontal, k)
        .monomials()
        .iter()
        .map(|m| MultiCovector::from_monomial(n, *m, Q::from_integer(1.into())))
        .collect()
}

/// Constant complements `ω_J` with `deg ρ + |J| = k`.
fn complements(n: usize, rho_degree: usize, k: usize) -> Vec<Monomial> {
    if rho_degree > k {
        return Vec::new();
    }
    combinations(2 * n + 1, k - rho_degree)
}

/// Pointwise residuals `r_J = Σ_I coeff(ρ∧ω_J, I) m_I` on one simplex.
enum Residual {
    Exact(bool),
    Float { max: f64, scale: f64 },
}

fn residual(s: &ParamSimplex, rho: &MultiCovector) -> Result<Residual> {
    let n = s.n();
    let k = s.dim();
    let tests: Vec<MultiCovector> = complements(n, rho.degree(), k)
        .into_iter()
        .map(|m| rho.wedge(&MultiCovector::from_monomial(n, m, Q::from_integer(1.into()))))
        .collect::<Result<_>>()?;
    if let Some(jac) = s.frame_jacobian_poly() {
        let m = minors(&jac);
        let all_zero = tests.iter().all(|t| {
            let mut r = Polynomial::zero();
            for (i, p) in &m {
                let c = t.coeff(*i);
                if !c.is_zero() {
                    r += &p.scale(&c);
                }
            }
            r.is_zero()
        });
        return Ok(Residual::Exact(all_zero));
    }
    let rule = s.rule(s.quadrature_order());
    let mut max: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for u in &rule.points {
        let m = minors(&s.frame_jacobian(u));
        for (_, v) in &m {
            scale = scale.max(v.abs());
        }
        for t in &tests {
            let r: f64 = m.iter().map(|(i, v)| to_f64(&t.coeff(*i)) * v).sum();
            max = max.max(r.abs());
        }
    }
    Ok(Residual::Float { max, scale })
}

fn float_tolerance(scale: f64) -> f64 {
    (100.0 * f64::EPSILON * scale).max(1e-9)
}

/// Axis box containing the image of the chain with a margin of 1.
fn enclosing_box(t: &Chain) -> Result<BoxDomain> {
    let d = 2 * t.n() + 1;
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for (_, s) in t.simplices() {
        let mut pts = s.rule(s.quadrature_order().max(2)).points;
        pts.push(vec![0.0; s.dim()]);
        pts.push(vec![1.0; s.dim()]);
        for i in 0..s.dim() {
            let mut e = vec![0.0; s.dim()];
            e[i] = 1.0;
            pts.push(e);
        }
        for u in &pts {
            for (i, x) in s.eval(u).iter().enumerate() {
                lo[i] = lo[i].min(*x);
                hi[i] = hi[i].max(*x);
            }
        }
    }
    let lo = lo
        .iter()
        .map(|x| Q::from_integer(((if x.is_finite() { x.floor() } else { 0.0 }) as i64 - 1).into()))
        .collect();
    let hi = hi
        .iter()
        .map(|x| Q::from_integer(((if x.is_finite() { x.ceil() } else { 0.0 }) as i64 + 1).into()))
        .collect();
    BoxDomain::new(lo, hi)
}

/// Pairing battery: `⟨T, bump · p · ρ∧ω_J⟩` for all complements `J`, with
/// `p` running over `1`, the coordinates and two seeded random polynomials.
fn pairing_battery(t: &Chain, rho: &MultiCovector, tol: f64) -> Result<bool> {
    let n = t.n();
    if t.simplices().is_empty() {
        return Ok(true);
    }
    let dom = enclosing_box(t)?;
    let bump = dom.bump();
    let mut r = rng(0x5eed);
    let mut multipliers = vec![Polynomial::one()];
    multipliers.extend((0..=2 * n).map(Polynomial::var));
    for _ in 0..2 {
        multipliers.push(random_polynomial(&mut r, 2 * n + 1, 2, 3));
    }
    let tests = complements(n, rho.degree(), t.dim())
        .into_iter()
        .map(|m| rho.wedge(&MultiCovector::from_monomial(n, m, Q::one())))
        .collect::<Result<Vec<_>>>()?;
    if t.is_polynomial() {
        // pull the bump and multipliers back once per simplex
        let mut sums = vec![Q::zero(); tests.len() * multipliers.len()];
        for (a, s) in t.simplices() {
            let map = s.polynomial_map().expect("polynomial chain");
            let m = minors(&s.frame_jacobian_poly().expect("polynomial chain"));
            let b = bump.compose(map);
            let fs: Vec<Polynomial> = multipliers.iter().map(|p| &b * &p.compose(map)).collect();
            for (ti, test) in tests.iter().enumerate() {
                let mut density = Polynomial::zero();
                for (i, p) in &m {
                    let c = test.coeff(*i);
                    if !c.is_zero() {
                        density += &p.scale(&c);
                    }
                }
                if density.is_zero() {
                    continue;
                }
                for (fi, f) in fs.iter().enumerate() {
                    let v = integrate_reference(&(f * &density), s.dim(), s.domain());
                    sums[ti * multipliers.len() + fi] += v * Q::from_integer((*a).into());
                }
            }
        }
        return Ok(sums.iter().all(Zero::is_zero));
    }
    for test in &tests {
        let test = PolyForm::from_covector(test);
        for p in &multipliers {
            let w = test.mul_function(&(&bump * p));
            let v = pair_chain(t, &w)?.to_f64();
            let scale = pair_chain_abs(t, &w)?;
            if v.abs() > tol * scale.max(1.0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Check {
    max_residual: f64,
    tolerance: f64,
}

impl Check {
    /// `T⌟ρ = 0` by pointwise residuals and by pairings.
    fn restricts(&mut self, t: &Chain, rho: &MultiCovector) -> Result<Verdict> {
        if rho.degree() > t.dim() {
            return Ok(Verdict::VacuouslyTrue);
        }
        let mut pointwise = true;
        for (_, s) in t.simplices() {
            match residual(s, rho)? {
                Residual::Exact(z) => pointwise &= z,
                Residual::Float { max, scale } => {
                    let tol = float_tolerance(scale);
                    self.max_residual = self.max_residual.max(max);
                    self.tolerance = self.tolerance.max(tol);
                    pointwise &= max <= tol;
                }
            }
        }
        let paired = pairing_battery(t, rho, self.tolerance.max(1e-9))?;
        Ok(Verdict::from_bool(pointwise && paired))
    }

    /// `∂T⌟ρ = 0`, checked through the pairing battery only.
    fn boundary_restricts(&mut self, t: &Chain, rho: &MultiCovector) -> Result<Verdict> {
        if t.dim() == 0 || rho.degree() > t.dim() - 1 {
            return Ok(Verdict::VacuouslyTrue);
        }
        let b = t.boundary()?;
        Ok(Verdict::from_bool(pairing_battery(&b, rho, self.tolerance.max(1e-9))?))
    }
}

/// Horizontal, vertical, co-Legendrian and oblique verdicts for a chain.
pub fn classify(t: &Chain) -> Result<Classification> {
    let n = t.n();
    let k = t.dim();
    let mut c = Check {
        max_residual: 0.0,
        tolerance: 0.0,
    };
    let (hor, co, co_b) = restrictions(n, k);
    let mut horizontal = Verdict::VacuouslyTrue;
    for rho in &hor {
        horizontal = horizontal.and(c.restricts(t, rho)?);
    }
    let (max_residual, tolerance) = (c.max_residual, c.tolerance);
    let mut vertical = Verdict::Holds;
    for w in horizontal_monomials(n, k) {
        vertical = vertical.and(c.restricts(t, &w)?);
    }
    if k > 0 {
        for w in horizontal_monomials(n, k - 1) {
            vertical = vertical.and(c.boundary_restricts(t, &w)?);
        }
    }
    let (co_legendrian, oblique) = match (co, co_b) {
        (Some(rho), Some(rho_b)) => {
            let cl = c.restricts(t, &rho)?;
            let ob = cl.and(c.boundary_restricts(t, &rho_b)?);
            (cl, if cl.holds() && ob.holds() { combine_vacuous(cl, ob) } else { Verdict::Fails })
        }
        _ => (Verdict::NotApplicable, horizontal),
    };
    Ok(Classification {
        horizontal,
        vertical,
        co_legendrian,
        oblique,
        max_residual,
        tolerance,
    })
}

fn combine_vacuous(a: Verdict, b: Verdict) -> Verdict {
    if a == Verdict::VacuouslyTrue && b == Verdict::VacuouslyTrue {
        Verdict::VacuouslyTrue
    } else {
        Verdict::Holds
    }
}

/// `𝔉𝔉(α)⌟ρ = 𝔉𝔉(α∧ρ)`, so restrictions become exact wedge tests; the
/// boundary uses `∂𝔉𝔉(α) = ±𝔉𝔉(dα)`.
pub fn classify_smooth(s: &SmoothCurrent) -> Result<Classification> {
    let alpha = s.form();
    let n = alpha.n();
    let k = s.dim();
    let d_alpha = alpha.exterior_d();
    let kills = |a: &PolyForm, rho: &MultiCovector, dim: usize| -> Result<Verdict> {
        if rho.degree() > dim {
            return Ok(Verdict::VacuouslyTrue);
        }
        Ok(Verdict::from_bool(a.wedge(&PolyForm::from_covector(rho))?.is_zero()))
    };
    let (hor, co, co_b) = restrictions(n, k);
    let mut horizontal = Verdict::VacuouslyTrue;
    for rho in &hor {
        horizontal = horizontal.and(kills(alpha, rho, k)?);
    }
    let mut vertical = Verdict::Holds;
    for w in horizontal_monomials(n, k) {
        vertical = vertical.and(kills(alpha, &w, k)?);
    }
    if k > 0 {
        for w in horizontal_monomials(n, k - 1) {
            vertical = vertical.and(kills(&d_alpha, &w, k - 1)?);
        }
    }
    let (co_legendrian, oblique) = match (co, co_b) {
        (Some(rho), Some(rho_b)) => {
            let cl = kills(alpha, &rho, k)?;
            let b = kills(&d_alpha, &rho_b, k - 1)?;
            (cl, if cl.holds() && b.holds() { combine_vacuous(cl, b) } else { Verdict::Fails })
        }
        _ => (Verdict::NotApplicable, horizontal),
    };
    Ok(Classification {
        horizontal,
        vertical,
        co_legendrian,
        oblique,
        max_residual: 0.0,
        tolerance: 0.0,
    })
}

/// Pointwise co-isotropy of the horizontal part of a tangent `k`-plane
/// (`k > n`): `dθ` vanishes on the `dθ`-orthogonal complement of `V_H`,
/// where `V_H` is the plane of horizontal projections of tangent vectors
/// lying in `ker θ`. Used as an independent oracle for co-Legendrian tests.
pub fn is_coisotropic_plane(n: usize, tangent: &[Vec<Q>]) -> bool {
    use crate::linalg::Matrix;
    let d = 2 * n;
    // vectors of the plane on which θ vanishes
    let z: Vec<Q> = tangent.iter().map(|v| v[d].clone()).collect();
    let zrow = Matrix::from_rows(vec![z]);
    let ker = zrow.kernel();
    let vh: Vec<Vec<Q>> = ker
        .iter()
        .map(|c| {
            (0..d)
                .map(|i| {
                    tangent
                        .iter()
                        .zip(c)
                        .fold(Q::zero(), |acc, (v, ci)| acc + &v[i] * ci)
                })
                .collect()
        })
        .collect();
    // dθ(a, b) = −Σ (a_i b_{n+i} − a_{n+i} b_i)
    let omega = |a: &[Q], b: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            s -= &a[i] * &b[n + i] - &a[n + i] * &b[i];
        }
        s
    };
    // complement W = {w : dθ(w, v) = 0 ∀ v ∈ V_H}
    let rows: Vec<Vec<Q>> = vh
        .iter()
        .map(|v| {
            (0..d)
                .map(|j| {
                    let mut e = vec![Q::zero(); d];
                    e[j] = Q::from_integer(1.into());
                    omega(&e, v)
                })
                .collect()
        })
        .collect();
    let w = if rows.is_empty() {
        (0..d)
            .map(|j| {
                let mut e = vec![Q::zero(); d];
                e[j] = Q::from_integer(1.into());
                e
            })
            .collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    w.iter().all(|a| w.iter().all(|b| omega(a, b).abs().is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::chain::Domain;

    fn chain(dim: usize, map: &[&str]) -> Chain {
        Chain::single(ParamSimplex::parse(dim, Domain::Cube, map).unwrap())
    }

    #[test]
    fn spec_classifications() {
        let seg = classify(&chain(1, &["u1", "0", "0"])).unwrap();
        assert_eq!(seg.horizontal, Verdict::Holds);
        assert_eq!(seg.vertical, Verdict::Fails);
        assert_eq!(seg.co_legendrian, Verdict::NotApplicable);
        assert_eq!(seg.oblique, Verdict::Holds);

        let good = classify(&chain(3, &["u1", "u2", "0", "0", "u3"])).unwrap();
        assert_eq!(good.co_legendrian, Verdict::Holds);
        let bad = classify(&chain(3, &["u1", "0", "u2", "0", "u3"])).unwrap();
        assert_eq!(bad.co_legendrian, Verdict::Fails);
        assert_eq!(bad.oblique, Verdict::Fails);
        assert_eq!(good.horizontal, Verdict::Fails);
    }

    #[test]
    fn planes_in_h1_are_vacuously_co_legendrian() {
        let sq = classify(&chain(2, &["u1", "0", "u2"])).unwrap();
        assert_eq!(sq.co_legendrian, Verdict::VacuouslyTrue);
        // the boundary loop is not horizontal, so the square is not oblique
        assert_eq!(sq.oblique, Verdict::Fails);
        assert_eq!(sq.horizontal, Verdict::Fails);
    }

    #[test]
    fn legendrian_curve_and_float_path() {
        // (u, u², u³/6) is tangent to ker θ
        let c = classify(&chain(1, &["u1", "u1^2", "u1^3/6"])).unwrap();
        assert_eq!(c.horizontal, Verdict::Holds);
        let c = classify(&chain(1, &["cos(u1)", "sin(u1)", "u1/2"])).unwrap();
        assert_eq!(c.horizontal, Verdict::Holds);
        assert!(c.max_residual <= c.tolerance);
        let c = classify(&chain(1, &["cos(u1)", "sin(u1)", "u1"])).unwrap();
        assert_eq!(c.horizontal, Verdict::Fails);
    }

    #[test]
    fn vertical_requires_boundary() {
        // a vertical segment kills horizontal 1-forms but its endpoints see functions
        let v = classify(&chain(1, &["0", "0", "u1"])).unwrap();
        assert_eq!(v.vertical, Verdict::Fails);
        // a closed vertical loop has no boundary
        let loop_ = Chain::new(
            1,
            1,
            vec![
                (1, ParamSimplex::parse(1, Domain::Cube, &["0", "0", "u1"]).unwrap()),
                (-1, ParamSimplex::parse(1, Domain::Cube, &["0", "0", "u1"]).unwrap()),
            ],
            false,
        )
        .unwrap();
        assert_eq!(classify(&loop_).unwrap().vertical, Verdict::Holds);
    }

    #[test]
    fn coisotropy_oracle() {
        let e = |i: usize| {
            let mut v = vec![Q::zero(); 5];
            v[i] = Q::from_integer(1.into());
            v
        };
        assert!(is_coisotropic_plane(2, &[e(0), e(1), e(4)]));
        assert!(!is_coisotropic_plane(2, &[e(0), e(2), e(4)]));
    }
}
