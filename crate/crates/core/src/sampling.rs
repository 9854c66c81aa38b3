//! Seeded random batteries of polynomials, forms and sections of `E₀`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forms::{BoxDomain, PolyForm};
use crate::heis::{combinations, MultiCovector};
use crate::poly::Polynomial;
use crate::rumin::RuminComplex;
use crate::{q, Q};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut Rng64) -> Q {
    let num = rng.random_range(-4i64..=4);
    let den = rng.random_range(1i64..=3);
    q(num, den)
}

/// Polynomial with up to `max_terms` monomials of total degree ≤ `max_degree`.
pub fn random_polynomial(rng: &mut Rng64, nvars: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let mut p = Polynomial::default();
    let terms = rng.random_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let total = rng.random_range(0..=max_degree);
        let mut e = vec![0u32; nvars];
        for _ in 0..total {
            e[rng.random_range(0..nvars)] += 1;
        }
        p += Polynomial::monomial(e, small_rational(rng));
    }
    p
}

/// Form of degree `k` with random polynomial coefficients on a few monomials.
pub fn random_form(rng: &mut Rng64, n: usize, k: usize, max_degree: u32) -> PolyForm {
    let monos = combinations(2 * n + 1, k);
    let mut a = PolyForm::zero(n, k);
    let slots = rng.random_range(1..=3.min(monos.len()));
    for _ in 0..slots {
        let m = monos[rng.random_range(0..monos.len())];
        let f = random_polynomial(rng, 2 * n + 1, max_degree, 3);
        a = &a + &PolyForm::from_monomial(n, m, f);
    }
    a
}

/// Random constant covector of degree `k`.
pub fn random_covector(rng: &mut Rng64, n: usize, k: usize) -> MultiCovector {
    let mut a = MultiCovector::zero(n, k);
    for m in combinations(2 * n + 1, k) {
        if rng.random_bool(0.5) {
            a = &a + &MultiCovector::from_monomial(n, m, small_rational(rng));
        }
    }
    a
}

/// `Σ fⱼ eⱼ` over a basis `eⱼ` of `E₀^h` with random polynomial `fⱼ`.
pub fn random_e0_section(rng: &mut Rng64, rc: &RuminComplex, h: usize, max_degree: u32) -> PolyForm {
    let n = rc.n();
    let basis = rc.e0_basis(h).expect("degree in range");
    let mut out = PolyForm::zero(n, h);
    for e in &basis.elements {
        if rng.random_bool(0.6) {
            let f = random_polynomial(rng, 2 * n + 1, max_degree, 3);
            out = &out + &PolyForm::from_covector(e).mul_function(&f);
        }
    }
    out
}

/// A box around the origin with rational sides in `[1/2, 2]`.
pub fn random_box(rng: &mut Rng64, dim: usize) -> BoxDomain {
    let lo: Vec<Q> = (0..dim).map(|_| q(-rng.random_range(1i64..=4), 2)).collect();
    let hi: Vec<Q> = (0..dim).map(|_| q(rng.random_range(1i64..=4), 2)).collect();
    BoxDomain::new(lo, hi).expect("nondegenerate by construction")
}

/// `∫₀^u p` for a polynomial in one variable.
fn antiderivative(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::default();
    for (e, c) in p.terms() {
        let k = e.first().copied().unwrap_or(0);
        out += Polynomial::monomial(vec![k + 1], c / Q::from_integer((k + 1).into()));
    }
    out
}

/// Polynomial map tangent to `ker θ`, of dimension 1 (any `n`) or 2 (`n ≥ 2`).
///
/// Curves take random `x(u), y(u)` and `t = ∫ ½(x·y′ − y·x′)`; surfaces are
/// graphs `y = ∇φ(x₁, x₂)` with `t = ½ x·∇φ − φ`.
pub fn random_legendrian_map(rng: &mut Rng64, n: usize, k: usize, max_degree: u32) -> Vec<Polynomial> {
    assert!(k == 1 || (k == 2 && n >= 2), "unsupported Legendrian dimension");
    let zero = Polynomial::default();
    let mut comps = vec![zero; 2 * n + 1];
    if k == 1 {
        let mut omega = Polynomial::default();
        for i in 0..n {
            let x = random_polynomial(rng, 1, max_degree.max(1), 3);
            let y = random_polynomial(rng, 1, max_degree.max(1), 3);
            omega += &(&x * &y.derivative(0)) - &(&y * &x.derivative(0));
            comps[i] = x;
            comps[n + i] = y;
        }
        comps[2 * n] = antiderivative(&omega.scale(&q(1, 2)));
    } else {
        let phi = random_polynomial(rng, 2, max_degree.max(2), 4);
        let (u, v) = (Polynomial::var(0), Polynomial::var(1));
        let (pu, pv) = (phi.derivative(0), phi.derivative(1));
        let t = &(&(&u * &pu) + &(&v * &pv)).scale(&q(1, 2)) - &phi;
        comps[0] = u;
        comps[1] = v;
        comps[n] = pu;
        comps[n + 1] = pv;
        comps[2 * n] = t;
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn seeded_batteries_are_deterministic() {
        let a = random_form(&mut rng(7), 2, 2, 3);
        let b = random_form(&mut rng(7), 2, 2, 3);
        assert_eq!(a, b);
        assert!(a.coeff_degree().unwrap_or(0) <= 3);
    }

    #[test]
    fn legendrian_maps_are_horizontal() {
        let mut r = rng(9);
        for (n, k) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let map = random_legendrian_map(&mut r, n, k, 3);
            // θ(∂_j F) = t_j − ½ Σ (x y_j − y x_j)
            for j in 0..k {
                let mut th = map[2 * n].derivative(j);
                for i in 0..n {
                    let w = &(&map[i] * &map[n + i].derivative(j)) - &(&map[n + i] * &map[i].derivative(j));
                    th = &th - &w.scale(&q(1, 2));
                }
                assert!(th.is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn e0_sections_are_fixed_by_projector() {
        let rc = RuminComplex::get(2);
        let mut r = rng(3);
        for h in 0..=5 {
            let g = random_e0_section(&mut r, rc, h, 2);
            assert!(rc.is_e0_section(&g).unwrap());
        }
    }
}
