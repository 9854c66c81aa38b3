//! Gauss–Legendre rules on cubes and collapsed-cube rules on simplices.

use std::f64::consts::PI;

/// Default number of nodes per axis.
pub const DEFAULT_ORDER: usize = 8;

/// Order used for the error estimate against [`DEFAULT_ORDER`].
pub const ESTIMATE_ORDER_STEP: usize = 4;

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_m
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(m, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A rule `Σ wᵢ f(pᵢ)` on a reference domain.
#[derive(Clone, Debug)]
pub struct Rule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .collect();
        pairwise_sum(&terms)
    }
}

/// Tensor Gauss–Legendre rule on `[0, 1]^dim`.
pub fn cube_rule(dim: usize, order: usize) -> Rule {
    let (x, w) = gauss_legendre(order);
    let x: Vec<f64> = x.iter().map(|v| 0.5 * (v + 1.0)).collect();
    let w: Vec<f64> = w.iter().map(|v| 0.5 * v).collect();
    let mut points = vec![Vec::new()];
    let mut weights = vec![1.0];
    for _ in 0..dim {
        let mut np = Vec::with_capacity(points.len() * order);
        let mut nw = Vec::with_capacity(points.len() * order);
        for (p, pw) in points.iter().zip(&weights) {
            for (xi, wi) in x.iter().zip(&w) {
                let mut q = p.clone();
                q.push(*xi);
                np.push(q);
                nw.push(pw * wi);
            }
        }
        points = np;
        weights = nw;
    }
    Rule { points, weights }
}

/// Rule on the standard simplex `{s ≥ 0, Σs ≤ 1}` through the collapsed map
/// `s₁ = v₁`, `s₂ = (1 − v₁)v₂`, …, with Jacobian `Π (1 − vᵢ)^{dim−1−i}`.
pub fn simplex_rule(dim: usize, order: usize) -> Rule {
    let cube = cube_rule(dim, order);
    let mut points = Vec::with_capacity(cube.len());
    let mut weights = Vec::with_capacity(cube.len());
    for (v, w) in cube.points.iter().zip(&cube.weights) {
        let mut s = Vec::with_capacity(dim);
        let mut scale = 1.0;
        let mut jac = 1.0;
        for (i, vi) in v.iter().enumerate() {
            s.push(scale * vi);
            jac *= (1.0 - vi).powi((dim - 1 - i) as i32);
            scale *= 1.0 - vi;
        }
        points.push(s);
        weights.push(w * jac);
    }
    Rule { points, weights }
}

/// Fixed-order pairwise summation, so results do not depend on chunking.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2..=8 => v.iter().sum(),
        len => {
            let mid = len / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_low_orders() {
        let (x, w) = gauss_legendre(1);
        assert_eq!((x[0], w[0]), (0.0, 2.0));
        let (x, w) = gauss_legendre(2);
        assert!((x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert!(x[1].abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_polynomials_up_to_2m_minus_1() {
        for m in 1..=12 {
            let (x, w) = gauss_legendre(m);
            for deg in 0..2 * m {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - exact).abs() < 1e-13, "m={m} deg={deg}");
            }
        }
    }

    #[test]
    fn cube_and_simplex_volumes() {
        assert!((cube_rule(3, 4).integrate(|_| 1.0) - 1.0).abs() < 1e-14);
        assert!((simplex_rule(2, 4).integrate(|_| 1.0) - 0.5).abs() < 1e-14);
        assert!((simplex_rule(3, 4).integrate(|_| 1.0) - 1.0 / 6.0).abs() < 1e-14);
        // ∫_Δ² s₁ s₂ = 1/24
        let v = simplex_rule(2, 6).integrate(|s| s[0] * s[1]);
        assert!((v - 1.0 / 24.0).abs() < 1e-15);
        let r = cube_rule(0, 8);
        assert_eq!(r.len(), 1);
        assert_eq!(r.integrate(|_| 3.0), 3.0);
    }

    #[test]
    fn simplex_rule_matches_exact_monomial_integrals() {
        use crate::poly::Polynomial;
        let p = &Polynomial::var(0).pow(3) * &Polynomial::var(1).pow(2);
        let exact = crate::to_f64(&p.integrate_simplex(2));
        let got = simplex_rule(2, 8).integrate(|s| p.eval_f64(s));
        assert!((got - exact).abs() < 1e-15);
    }

    #[test]
    fn pairwise_sum_is_sum() {
        let v: Vec<f64> = (0..100).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 4950.0);
    }
}
