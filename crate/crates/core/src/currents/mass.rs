use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::heis::{Basis, Monomial, Space};
use crate::linalg::Matrix;
use crate::quadrature::ESTIMATE_ORDER_STEP;
use crate::rumin::RuminComplex;
use crate::sampling::rng;
use crate::to_f64;

use super::chain::{minors, Chain, ParamSimplex};

/// The three masses of a chain with a quadrature error estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassReport {
    pub riemannian_mass: f64,
    pub oblique_mass: f64,
    pub rumin_mass: f64,
    pub quadrature_error_estimate: f64,
    /// Set when the chain was not declared embedded with disjoint interiors.
    pub upper_bound: bool,
}

/// Which pointwise density to integrate against area.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Density {
    /// `√det(JᵀJ)`.
    Riemannian,
    /// `√(zᵀG⁻¹z · det G)`, the area element times `|sin α|`.
    Oblique,
    /// `|Π_E₀ τ|` with `τ` the tangent k-vector read as a covector.
    Rumin,
}

/// Thin QR of `J` by Gram–Schmidt with one reorthogonalization pass.
/// Returns `|det R|` and the columns of `Q`; columns are left at zero once
/// `R` is singular.
fn thin_qr(j: &Matrix<f64>) -> (f64, Vec<Vec<f64>>) {
    let k = j.cols();
    let mut qs: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut det = 1.0;
    for c in 0..k {
        let mut v = j.column(c);
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for _ in 0..2 {
            for q in &qs {
                let d: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(x, a)| *x -= d * a);
            }
        }
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r == 0.0 || r <= f64::EPSILON * scale {
            return (0.0, Vec::new());
        }
        det *= r;
        qs.push(v.into_iter().map(|x| x / r).collect());
    }
    (det, qs)
}

/// `√det(JᵀJ)`, computed as `|det R|` for `J = QR`.
pub fn area_density(j: &Matrix<f64>) -> f64 {
    thin_qr(j).0
}

/// `√(zᵀG⁻¹z · det G)` with `z` the `Z` row of `J` and `G = JᵀJ`. Since
/// `R⁻ᵀz` is the `Z` row of `Q`, this is `|det R|` times that row's norm.
pub fn oblique_density(j: &Matrix<f64>) -> f64 {
    let (det, qs) = thin_qr(j);
    let z = j.rows() - 1;
    det * qs.iter().map(|q| q[z] * q[z]).sum::<f64>().sqrt()
}

struct RuminProjector {
    basis: Basis,
    matrix: Matrix<f64>,
}

impl RuminProjector {
    fn new(n: usize, k: usize) -> Self {
        let rc = RuminComplex::get(n);
        let basis = Basis::new(n, Space::Full, k);
        let matrix = rc
            .pi_e0()
            .block(k)
            .map(|b| b.matrix.map(to_f64))
            .unwrap_or_else(|| Matrix::identity(basis.len()));
        RuminProjector { basis, matrix }
    }

    fn density(&self, j: &Matrix<f64>) -> f64 {
        let mut v = vec![0.0; self.basis.len()];
        for (m, x) in minors(j) {
            if let Some(p) = self.basis.position(m) {
                v[p] = x;
            }
        }
        self.matrix.mul_vec(&v).iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

fn integrate_simplex(s: &ParamSimplex, order: usize, density: &dyn Fn(&Matrix<f64>) -> f64) -> f64 {
    s.rule(order).integrate(|u| density(&s.frame_jacobian(u)))
}

fn integrate_chain(t: &Chain, step: usize, density: &dyn Fn(&Matrix<f64>) -> f64) -> f64 {
    t.simplices()
        .iter()
        .map(|(a, s)| a.unsigned_abs() as f64 * integrate_simplex(s, s.quadrature_order() + step, density))
        .sum()
}

/// `Σ |aᵢ| ∫ density` at each simplex's own quadrature order.
pub fn chain_mass(t: &Chain, kind: Density) -> f64 {
    chain_mass_at(t, kind, 0)
}

fn chain_mass_at(t: &Chain, kind: Density, step: usize) -> f64 {
    match kind {
        Density::Riemannian => integrate_chain(t, step, &area_density),
        Density::Oblique => integrate_chain(t, step, &oblique_density),
        Density::Rumin => {
            let p = RuminProjector::new(t.n(), t.dim());
            integrate_chain(t, step, &|j| p.density(j))
        }
    }
}

pub fn mass(t: &Chain) -> f64 {
    chain_mass(t, Density::Riemannian)
}

pub fn oblique_mass(t: &Chain) -> f64 {
    chain_mass(t, Density::Oblique)
}

pub fn rumin_mass(t: &Chain) -> f64 {
    chain_mass(t, Density::Rumin)
}

/// All three masses, with `max |order q − order q+4|` as the error estimate.
pub fn mass_report(t: &Chain) -> MassReport {
    let mut values = [0.0; 3];
    let mut err: f64 = 0.0;
    for (slot, kind) in [Density::Riemannian, Density::Oblique, Density::Rumin].into_iter().enumerate() {
        let v = chain_mass_at(t, kind, 0);
        let w = chain_mass_at(t, kind, ESTIMATE_ORDER_STEP);
        values[slot] = v;
        err = err.max((v - w).abs());
    }
    MassReport {
        riemannian_mass: values[0],
        oblique_mass: values[1],
        rumin_mass: values[2],
        quadrature_error_estimate: err,
        upper_bound: !t.embedded_disjoint(),
    }
}

/// Calibrating horizontal `(k−1)`-covector of `τ⌟θ`, as `(J, coefficient)`
/// with `⟨τ, θ∧ω_J⟩ = Σ φ_J c_J`.
fn theta_components(n: usize, j: &Matrix<f64>) -> Vec<(Monomial, f64)> {
    let theta = 2 * n;
    minors(j)
        .into_iter()
        .filter(|(m, _)| m.contains(theta))
        .map(|(m, v)| {
            let rest = m.without(theta);
            // θ∧ω_J = (−1)^{|J|} ω_J∧θ
            let sign = if rest.degree() % 2 == 0 { 1.0 } else { -1.0 };
            (rest, sign * v)
        })
        .collect()
}

/// Lower estimate of the oblique mass through pairings `⟨T, θ∧φ⟩` with unit
/// horizontal fields `φ`: the calibrating field and `fields − 1` random
/// perturbations of it. Returns the largest value found.
pub fn oblique_mass_pairing_sup(t: &Chain, fields: usize, seed: u64) -> Result<f64> {
    let n = t.n();
    let k = t.dim();
    if k == 0 {
        return Ok(0.0);
    }
    let horizontal = Basis::new(n, Space::Horizontal, k - 1);
    let mut r = rng(seed);
    let mut best: f64 = 0.0;
    for f in 0..fields.max(1) {
        let (eps, dir): (f64, Vec<f64>) = if f == 0 {
            (0.0, vec![0.0; horizontal.len()])
        } else {
            let eps = 10f64.powi(-r.random_range(1..=4));
            (eps, (0..horizontal.len()).map(|_| r.random_range(-1.0..1.0)).collect())
        };
        let mut total = 0.0;
        for (a, s) in t.simplices() {
            let value = s.rule(s.quadrature_order()).integrate(|u| {
                let comps = theta_components(n, &s.frame_jacobian(u));
                let mut c = vec![0.0; horizontal.len()];
                for (m, v) in &comps {
                    if let Some(p) = horizontal.position(*m) {
                        c[p] = *v;
                    }
                }
                let cn = c.iter().map(|x| x * x).sum::<f64>().sqrt();
                let mut phi: Vec<f64> = c
                    .iter()
                    .zip(&dir)
                    .map(|(x, d)| if cn > 0.0 { x / cn } else { 0.0 } + eps * d)
                    .collect();
                let pn = phi.iter().map(|x| x * x).sum::<f64>().sqrt();
                if pn == 0.0 {
                    return 0.0;
                }
                phi.iter_mut().for_each(|x| *x /= pn);
                phi.iter().zip(&c).map(|(p, x)| p * x).sum()
            });
            total += a.unsigned_abs() as f64 * value;
        }
        best = best.max(total);
    }
    Ok(best)
}
