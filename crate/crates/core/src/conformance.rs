//! Exact identity suite: randomized and exhaustive batteries whose residuals
//! must vanish in rational arithmetic.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::currents::chain::{Chain, Domain, ParamSimplex};
use crate::currents::smooth::{
    agree_on, b_operator, hat, oblique_correction, oblique_correction_functional, pair_exact, tilde,
    Current, SmoothCurrent,
};
use crate::error::Result;
use crate::forms::{BoxDomain, PolyForm};
use crate::heis::{combinations, Basis, MultiCovector, Space};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::rumin::RuminComplex;
use crate::sampling::{
    random_box, random_e0_section, random_form, random_legendrian_map, random_polynomial, rng, Rng64,
};
use crate::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        })
    }
}

/// One identity of the suite.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub name: String,
    /// The identity in formula form.
    pub anchor: String,
    pub instances: usize,
    pub status: Status,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConformanceReport {
    pub n: usize,
    pub degree_bound: u32,
    pub seed: u64,
    pub rows: Vec<Row>,
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
}

impl ConformanceReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn row(&self, name: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Parameters of [`verify`].
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub degree_bound: u32,
    pub seed: u64,
    /// Random instances per algebraic identity.
    pub instances: usize,
    /// Random instances per current identity.
    pub current_instances: usize,
    /// Sign of `dθ` used by the complex under test; `−1` is the negative control.
    pub dtheta_sign: i32,
}

impl VerifyConfig {
    pub fn new(n: usize) -> Self {
        VerifyConfig {
            n,
            degree_bound: 3,
            seed: 7,
            instances: 200,
            current_instances: 50,
            dtheta_sign: 1,
        }
    }
}

type Check<'a> = Box<dyn FnMut(&mut Rng64, usize) -> Result<Option<String>> + 'a>;

fn run(rows: &mut Vec<Row>, r: &mut Rng64, name: &str, anchor: &str, count: usize, mut f: Check<'_>) {
    let mut counterexample = None;
    let mut done = 0;
    for i in 0..count {
        done = i + 1;
        match f(r, i) {
            Ok(None) => {}
            Ok(Some(c)) => {
                counterexample = Some(c);
                break;
            }
            Err(e) => {
                counterexample = Some(format!("error: {e}"));
                break;
            }
        }
    }
    rows.push(Row {
        name: name.into(),
        anchor: anchor.into(),
        instances: done,
        status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
        counterexample,
    });
}

fn fail_if(bad: bool, what: impl FnOnce() -> String) -> Option<String> {
    bad.then(what)
}

/// Runs every row for `cfg.n`, plus the covector identities for `n = 1..=3`.
pub fn verify(cfg: &VerifyConfig) -> Result<ConformanceReport> {
    let n = cfg.n;
    let rc_owned;
    let rc: &RuminComplex = if cfg.dtheta_sign == 1 {
        RuminComplex::get(n)
    } else {
        rc_owned = RuminComplex::with_dtheta_sign(n, cfg.dtheta_sign);
        &rc_owned
    };
    let top = 2 * n + 1;
    let deg = cfg.degree_bound;
    let count = cfg.instances;
    let mut r = rng(cfg.seed);
    let mut rows = Vec::new();

    run(&mut rows, &mut r, "d_squared", "d ∘ d = 0", count, Box::new(|r, i| {
        let a = random_form(r, n, i % top, deg);
        let dd = rc.exterior_d(&rc.exterior_d(&a));
        Ok(fail_if(!dd.is_zero(), || format!("α = {a}, ddα = {dd}")))
    }));

    run(&mut rows, &mut r, "d_weight_parts", "d = d₀ + d₁ + d₂, d_j raises weight by j", count, Box::new(|r, i| {
        let a = random_form(r, n, i % (top + 1), deg);
        let parts: Vec<PolyForm> = (0..3).map(|j| a.d_weight_part(j)).collect();
        let sum = &(&parts[0] + &parts[1]) + &parts[2];
        let d = rc.exterior_d(&a);
        if sum != d {
            return Ok(Some(format!("α = {a}")));
        }
        for (j, p) in parts.iter().enumerate() {
            for (m, _) in p.terms() {
                let w = m.weight(n);
                let ok = a.terms().any(|(m0, _)| m0.weight(n) + j == w);
                if !ok {
                    return Ok(Some(format!("α = {a}, part {j} = {p}")));
                }
            }
        }
        Ok(None)
    }));

    let e0: Vec<Vec<MultiCovector>> = (0..=top).map(|h| rc.e0_basis(h).map(|b| b.elements)).collect::<Result<_>>()?;
    let monomials: Vec<Polynomial> = (0..=deg)
        .flat_map(|d| monomials_of_degree(top, d))
        .collect();
    let sections: Vec<PolyForm> = e0
        .iter()
        .flatten()
        .flat_map(|e| monomials.iter().map(move |m| PolyForm::from_covector(e).mul_function(m)))
        .collect();
    let dc_count = sections.len().max(count);
    run(&mut rows, &mut r, "dc_squared", "d_c ∘ d_c = 0 on sections of E₀", dc_count, Box::new(|r, i| {
        let g = match sections.get(i) {
            Some(g) => g.clone(),
            None => random_e0_section(r, rc, i % (top + 1), deg),
        };
        if g.degree() + 2 > top {
            return Ok(None);
        }
        let once = rc.d_c(&g)?;
        let twice = rc.d_c_unchecked(&once)?;
        Ok(fail_if(!twice.is_zero(), || format!("γ = {g}, d_c d_c γ = {twice}")))
    }));

    run(&mut rows, &mut r, "pi_e_idempotent", "Π_E ∘ Π_E = Π_E", count, Box::new(|r, i| {
        let a = random_form(r, n, i % (top + 1), deg);
        let p = rc.pi_e(&a)?;
        Ok(fail_if(rc.pi_e(&p)? != p, || format!("α = {a}")))
    }));

    run(&mut rows, &mut r, "pi_e_chain_map", "d ∘ Π_E = Π_E ∘ d", count, Box::new(|r, i| {
        let a = random_form(r, n, i % top, deg);
        let lhs = rc.exterior_d(&rc.pi_e(&a)?);
        let rhs = rc.pi_e(&rc.exterior_d(&a))?;
        Ok(fail_if(lhs != rhs, || format!("α = {a}")))
    }));

    run(&mut rows, &mut r, "pi_e0_pi_e_pi_e0", "Π_E₀ Π_E Π_E₀ = Π_E₀", count, Box::new(|r, i| {
        let a = random_form(r, n, i % (top + 1), deg);
        let p0 = rc.apply_pi_e0(&a)?;
        let lhs = rc.apply_pi_e0(&rc.pi_e(&p0)?)?;
        Ok(fail_if(lhs != p0, || format!("α = {a}")))
    }));

    run(&mut rows, &mut r, "pi_e_pi_e0_pi_e", "Π_E Π_E₀ Π_E = Π_E", count, Box::new(|r, i| {
        let a = random_form(r, n, i % (top + 1), deg);
        let p = rc.pi_e(&a)?;
        let lhs = rc.pi_e(&rc.apply_pi_e0(&p)?)?;
        Ok(fail_if(lhs != p, || format!("α = {a}")))
    }));

    run(&mut rows, &mut r, "pi_e_on_e0", "Π_E γ = γ − d₀⁻¹d₁γ (h ≤ n), Π_E γ = γ (h > n)", count, Box::new(|r, i| {
        let h = i % (top + 1);
        let g = random_e0_section(r, rc, h, deg);
        let p = rc.pi_e(&g)?;
        let expected = if h <= n {
            &g - &rc.apply_d0_pinv(&g.d_weight_part(1))?
        } else {
            g.clone()
        };
        if p != expected {
            return Ok(Some(format!("γ = {g}, Π_E γ = {p}")));
        }
        Ok(fail_if(!(&p - &g).is_vertical(), || format!("γ = {g}: Π_E γ − γ not vertical")))
    }));

    run(&mut rows, &mut r, "pi_e0_projector", "Π_E₀² = Π_E₀ = Π_E₀ᵀ", top + 1, Box::new(|_, h| {
        let p = match rc.pi_e0().block(h) {
            Some(b) => b.matrix.clone(),
            None => return Ok(None),
        };
        let ok = p.matmul(&p) == p && p.transpose() == p;
        Ok(fail_if(!ok, || format!("degree {h}")))
    }));

    run(&mut rows, &mut r, "pi_e0_weights", "Π_E₀ 𝔰_λ* = 𝔰_λ* Π_E₀", count, Box::new(|r, i| {
        let a = random_form(r, n, i % (top + 1), deg);
        let l = q(r.random_range(1..=7), r.random_range(1..=5));
        let lhs = rc.apply_pi_e0(&a.dilation_pullback(&l)?)?;
        let rhs = rc.apply_pi_e0(&a)?.dilation_pullback(&l)?;
        Ok(fail_if(lhs != rhs, || format!("α = {a}, λ = {l}")))
    }));

    run(
        &mut rows,
        &mut r,
        "rumin_e_membership",
        "Π_E α = α ⟺ θ∧dθ^{n−h+1}∧α = 0 = θ∧dθ^{n−h}∧dα (h ≤ n), α and dα vertical (h > n)",
        count,
        Box::new(|r, i| {
            let h = i % (top + 1);
            let raw = random_form(r, n, h, deg);
            let a = if i % 2 == 0 { rc.pi_e(&raw)? } else { raw };
            let in_e = rc.pi_e(&a)? == a;
            let da = rc.exterior_d(&a);
            let criterion = if h <= n {
                let c1 = PolyForm::from_covector(&rc.theta_dtheta_power(n - h + 1));
                let c2 = PolyForm::from_covector(&rc.theta_dtheta_power(n - h));
                c1.wedge(&a)?.is_zero() && c2.wedge(&da)?.is_zero()
            } else {
                a.is_vertical() && da.is_vertical()
            };
            Ok(fail_if(in_e != criterion, || format!("α = {a}: Π_E α = α is {in_e}")))
        }),
    );

    for m in 1..=3usize {
        hodge_rows(&mut rows, &mut r, m, cfg.dtheta_sign, rc);
    }

    current_rows(&mut rows, &mut r, n, deg, cfg.current_instances)?;

    let passed = rows.iter().filter(|r| r.status == Status::Pass).count();
    let total = rows.len();
    Ok(ConformanceReport {
        n,
        degree_bound: deg,
        seed: cfg.seed,
        rows,
        passed,
        failed: total - passed,
        total,
    })
}

fn monomials_of_degree(vars: usize, d: u32) -> Vec<Polynomial> {
    fn rec(vars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Polynomial>) {
        if prefix.len() + 1 == vars {
            prefix.push(d);
            out.push(Polynomial::monomial(prefix.clone(), Q::one()));
            prefix.pop();
            return;
        }
        for k in 0..=d {
            prefix.push(k);
            rec(vars, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut Vec::new(), &mut out);
    out
}

fn horizontal_matrix(
    n: usize,
    source: usize,
    target: usize,
    f: impl Fn(&MultiCovector) -> Result<MultiCovector>,
) -> Result<Matrix> {
    let sb = Basis::new(n, Space::Horizontal, source);
    let tb = Basis::new(n, Space::Horizontal, target);
    let cols = sb
        .monomials()
        .iter()
        .map(|m| Ok(f(&MultiCovector::from_monomial(n, *m, Q::one()))?.to_vector(&tb)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(tb.len(), &cols))
}

fn lefschetz_power(a: &MultiCovector, k: usize) -> Result<MultiCovector> {
    let mut out = a.clone();
    for _ in 0..k {
        out = out.lefschetz_raise()?;
    }
    Ok(out)
}

/// Horizontal covector identities as matrix identities per degree in ℍᵐ.
fn hodge_rows(rows: &mut Vec<Row>, r: &mut Rng64, m: usize, sign: i32, rc: &RuminComplex) {
    let degrees = 2 * m + 1;
    run(rows, r, &format!("hodge_star_lambda_n{m}"), "⋆Λ = L⋆", degrees, Box::new(|_, l| {
        if l < 2 {
            return Ok(None);
        }
        let lhs = horizontal_matrix(m, l, 2 * m - l + 2, |a| a.lefschetz_lower()?.hodge_star_h())?;
        let rhs = horizontal_matrix(m, l, 2 * m - l + 2, |a| a.hodge_star_h()?.lefschetz_raise())?;
        Ok(fail_if(lhs != rhs, || format!("degree {l}")))
    }));
    run(rows, r, &format!("hodge_kernel_n{m}"), "ker Λ = ker L^{n−k+1} on Λᵏ𝔥₁, k ≤ n", m + 1, Box::new(|_, k| {
        let lower = horizontal_matrix(m, k, k.saturating_sub(2), |a| {
            if k < 2 {
                Ok(MultiCovector::zero(m, 0))
            } else {
                a.lefschetz_lower()
            }
        })?;
        let power = horizontal_matrix(m, k, k + 2 * (m - k + 1), |a| lefschetz_power(a, m - k + 1))?;
        Ok(fail_if(!lower.same_kernel(&power), || format!("degree {k}")))
    }));
    run(rows, r, &format!("hodge_image_n{m}"), "im Λ = im L^{n−k+1} in Λ^{2n−k}𝔥₁, k ≤ n", m + 1, Box::new(|_, k| {
        let target = 2 * m - k;
        let src_lower = target + 2;
        let lower = if src_lower <= 2 * m {
            horizontal_matrix(m, src_lower, target, |a| a.lefschetz_lower())?
        } else {
            Matrix::zeros(Basis::new(m, Space::Horizontal, target).len(), 1)
        };
        let power = if k >= 2 {
            horizontal_matrix(m, k - 2, target, |a| lefschetz_power(a, m - k + 1))?
        } else {
            Matrix::zeros(Basis::new(m, Space::Horizontal, target).len(), 1)
        };
        Ok(fail_if(!lower.same_column_space(&power), || format!("degree {k}")))
    }));
    let own;
    let rcm: &RuminComplex = if rc.n() == m {
        rc
    } else if sign == 1 {
        RuminComplex::get(m)
    } else {
        own = RuminComplex::with_dtheta_sign(m, sign);
        &own
    };
    let top = 2 * m + 1;
    run(
        rows,
        r,
        &format!("hodge_pinv_wedge_n{m}"),
        "(d₀⁻¹α)∧α′ = (−1)^h α∧(d₀⁻¹α′), deg α + deg α′ = 2n+2",
        top + 1,
        Box::new(|_, h| {
            if h == 0 {
                return Ok(None);
            }
            let hp = top + 1 - h;
            for a in combinations(top, h) {
                let a = MultiCovector::from_monomial(m, a, Q::one());
                let pa = rcm.apply_d0_pinv_covector(&a)?;
                for b in combinations(top, hp) {
                    let b = MultiCovector::from_monomial(m, b, Q::one());
                    let pb = rcm.apply_d0_pinv_covector(&b)?;
                    let lhs = pa.wedge(&b)?;
                    let rhs = a.wedge(&pb)?;
                    let rhs = if h % 2 == 0 { rhs } else { -&rhs };
                    if lhs != rhs {
                        return Ok(Some(format!("α = {a}, α′ = {b}")));
                    }
                }
            }
            Ok(None)
        }),
    );
}

fn bumped(r: &mut Rng64, n: usize, k: usize, deg: u32, dom: &BoxDomain) -> Result<PolyForm> {
    random_form(r, n, k, deg.min(2)).bump_multiply(dom)
}

fn bumped_e0(r: &mut Rng64, rc: &RuminComplex, k: usize, deg: u32, dom: &BoxDomain) -> Result<PolyForm> {
    random_e0_section(r, rc, k, deg.min(2)).bump_multiply(dom)
}

fn random_chain(r: &mut Rng64, n: usize, k: usize, deg: u32) -> Result<Chain> {
    let domain = if r.random_bool(0.5) { Domain::Cube } else { Domain::Simplex };
    let comps: Vec<Polynomial> = (0..2 * n + 1)
        .map(|_| random_polynomial(r, k, deg.clamp(1, 2), 2))
        .collect();
    Ok(Chain::single(ParamSimplex::from_polynomials(k, domain, &comps)?))
}

fn legendrian_chain(r: &mut Rng64, n: usize, k: usize, deg: u32) -> Result<Chain> {
    let comps = random_legendrian_map(r, n, k, deg.clamp(1, 2));
    Ok(Chain::single(ParamSimplex::from_polynomials(k, Domain::Cube, &comps)?))
}

/// Box enclosing the image of a polynomial chain over the unit reference cube.
fn chain_box(c: &Chain) -> Result<BoxDomain> {
    let d = 2 * c.n() + 1;
    let mut hi = vec![Q::one(); d];
    for (_, s) in c.simplices() {
        for (i, p) in s.polynomial_map().into_iter().flatten().enumerate() {
            let bound: Q = p.terms().map(|(_, c)| num_traits::Signed::abs(c)).fold(Q::zero(), |a, b| a + b);
            if bound > hi[i] {
                hi[i] = bound;
            }
        }
    }
    let lo = hi.iter().map(|x| -(x + Q::one())).collect();
    let hi = hi.iter().map(|x| x + Q::one()).collect();
    BoxDomain::new(lo, hi)
}

fn current_rows(rows: &mut Vec<Row>, r: &mut Rng64, n: usize, deg: u32, count: usize) -> Result<()> {
    let top = 2 * n + 1;
    let rc = RuminComplex::get(n);
    run(rows, r, "stokes_chains", "⟨∂T, ω⟩ = ⟨T, dω⟩", count, Box::new(|r, i| {
        let k = 1 + i % top.min(3);
        let t = random_chain(r, n, k, deg)?;
        let w = random_form(r, n, k - 1, deg);
        let lhs = pair_exact(&Current::Chain(t.boundary()?), &w)?;
        let rhs = pair_exact(&Current::Chain(t), &w.exterior_d())?;
        Ok(fail_if(lhs != rhs, || format!("ω = {w}: {lhs} ≠ {rhs}")))
    }));

    run(rows, r, "boundary_ff", "∂𝔉𝔉(α) = (−1)^k 𝔉𝔉(dα)", count, Box::new(|r, i| {
        let h = i % top;
        let dom = random_box(r, top);
        let a = random_form(r, n, h, deg);
        let s = SmoothCurrent::new(a.clone(), dom.clone())?;
        let k = s.dim();
        let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
        let lhs = Current::Smooth(s.clone()).boundary();
        let rhs = Current::Smooth(s.with_form(a.exterior_d())).scaled(sign);
        let tests = vec![bumped(r, n, k - 1, deg, &dom)?];
        Ok(fail_if(!agree_on(&lhs, &rhs, &tests)?, || format!("α = {a}")))
    }));

    run(rows, r, "b_of_ff", "𝔅𝔉𝔉(α) = (−1)^h 𝔉𝔉(d₀⁻¹α)", count, Box::new(|r, i| {
        let h = 1 + i % (top - 1);
        let dom = random_box(r, top);
        let a = random_form(r, n, h, deg);
        let s = SmoothCurrent::new(a.clone(), dom.clone())?;
        let sign = if h.is_multiple_of(2) { Q::one() } else { -Q::one() };
        let lhs = b_operator(Current::Smooth(s.clone()))?;
        let rhs = Current::Smooth(s.with_form(rc.apply_d0_pinv(&a)?)).scaled(sign);
        let tests = vec![bumped(r, n, lhs.dim(), deg, &dom)?];
        Ok(fail_if(!agree_on(&lhs, &rhs, &tests)?, || format!("α = {a}")))
    }));

    run(rows, r, "oblique_correction", "𝔉𝔉(Π_E α) = T − ∂𝔅T − 𝔅∂T", count, Box::new(|r, i| {
        let h = i % (top + 1);
        let dom = random_box(r, top);
        let s = SmoothCurrent::new(random_form(r, n, h, deg), dom.clone())?;
        let lhs = Current::Smooth(oblique_correction(&s)?);
        let rhs = oblique_correction_functional(Current::Smooth(s.clone()))?;
        let tests = vec![bumped(r, n, s.dim(), deg, &dom)?];
        Ok(fail_if(!agree_on(&lhs, &rhs, &tests)?, || format!("α = {}", s.form())))
    }));

    run(rows, r, "hat_tilde_low", "(T̃_R)^ = T_R, k ≤ n", count, Box::new(|r, i| {
        let k = 1 + i % n;
        let h = top - k;
        let dom = random_box(r, top);
        let beta = random_e0_section(r, rc, h, deg);
        let t = Current::RuminSmooth(SmoothCurrent::new(beta.clone(), dom.clone())?);
        let back = hat(tilde(t.clone())?)?;
        let tests = vec![bumped_e0(r, rc, k, deg, &dom)?];
        Ok(fail_if(!agree_on(&back, &t, &tests)?, || format!("β = {beta}")))
    }));

    let low_chain_dims: Vec<usize> = if n >= 2 { vec![1, 2] } else { vec![1] };
    run(rows, r, "tilde_hat_low", "(T̂)~ = T for horizontal T, k ≤ n", count, Box::new(|r, i| {
        let k = low_chain_dims[i % low_chain_dims.len()];
        let c = legendrian_chain(r, n, k, deg)?;
        let dom = chain_box(&c)?;
        let t = Current::Chain(c);
        let back = tilde(hat(t.clone())?)?;
        let tests = vec![bumped(r, n, k, deg, &dom)?];
        Ok(fail_if(!agree_on(&back, &t, &tests)?, || "Legendrian chain".into()))
    }));

    run(rows, r, "hat_tilde_high", "Π_E₀ Π_E β = β, k > n", count, Box::new(|r, i| {
        let h = i % (n + 1);
        let dom = random_box(r, top);
        let beta = random_e0_section(r, rc, h, deg);
        let t = Current::RuminSmooth(SmoothCurrent::new(beta.clone(), dom)?);
        match hat(tilde(t)?)? {
            Current::RuminSmooth(s) => Ok(fail_if(s.form() != &beta, || format!("β = {beta}"))),
            other => Ok(Some(format!("unexpected current {other:?}"))),
        }
    }));

    run(rows, r, "tilde_hat_high", "Π_E Π_E₀ α = α for α ∈ E, k > n", count, Box::new(|r, i| {
        let h = i % (n + 1);
        let dom = random_box(r, top);
        let alpha = rc.pi_e(&random_form(r, n, h, deg))?;
        let t = Current::Smooth(SmoothCurrent::new(alpha.clone(), dom)?);
        match tilde(hat(t)?)? {
            Current::Smooth(s) => Ok(fail_if(s.form() != &alpha, || format!("α = {alpha}"))),
            other => Ok(Some(format!("unexpected current {other:?}"))),
        }
    }));

    run(rows, r, "boundary_equivariance", "∂T̃_R = (∂_ℍ T_R)~", count, Box::new(|r, i| {
        let k = low_chain_dims[i % low_chain_dims.len()];
        let c = legendrian_chain(r, n, k, deg)?;
        let dom = chain_box(&c)?;
        let tr = hat(Current::Chain(c))?;
        let lhs = tilde(tr.clone())?.boundary();
        let rhs = tilde(tr.rumin_boundary())?;
        let tests = vec![bumped(r, n, k - 1, deg, &dom)?];
        Ok(fail_if(!agree_on(&lhs, &rhs, &tests)?, || "Legendrian chain".into()))
    }));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(n: usize, deg: u32) -> VerifyConfig {
        VerifyConfig {
            instances: 12,
            current_instances: 4,
            degree_bound: deg,
            ..VerifyConfig::new(n)
        }
    }

    #[test]
    fn small_suite_passes() {
        let rep = verify(&quick(1, 2)).unwrap();
        for row in &rep.rows {
            assert_eq!(row.status, Status::Pass, "{row:?}");
        }
        assert!(rep.total >= 12);
        assert_eq!(rep.total, rep.passed + rep.failed);
    }

    #[test]
    fn constant_coefficients_pass() {
        assert!(verify(&quick(2, 0)).unwrap().all_pass());
    }

    #[test]
    fn corrupted_dtheta_is_caught() {
        let cfg = VerifyConfig {
            dtheta_sign: -1,
            ..quick(1, 2)
        };
        let rep = verify(&cfg).unwrap();
        let row = rep.row("dc_squared").unwrap();
        assert_eq!(row.status, Status::Fail);
        assert!(row.counterexample.is_some());
        assert!(!rep.all_pass());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(5, 0).len(), 1);
    }
}
