//! The curve `f(x) = (x, 0, ∫₀ˣ u)` in ℍ¹ with `u = √dist(·, A)` for a
//! finite-stage fat Cantor set `A ⊂ [0, 1]`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default exponent `e` in `r_j = 2^{−e·j}/8`.
pub const DEFAULT_GAP_EXPONENT: f64 = 4.0 / 3.0;

/// Gap lengths `r_j = 2^{−e·j}/8` for stages `0..levels`.
pub fn default_gaps(levels: usize, exponent: f64) -> Vec<f64> {
    (0..levels).map(|j| (-exponent * j as f64).exp2() / 8.0).collect()
}

/// `(4/3)(r/2)^{3/2}`, the rise of `t` across a gap of length `r`.
pub fn gap_displacement(r: f64) -> f64 {
    4.0 / 3.0 * (r / 2.0).powf(1.5)
}

/// One row of the report: stage `j`, its leftmost gap and the rescaled rise.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageRow {
    pub stage: usize,
    pub gap_length: f64,
    pub vertical_displacement: f64,
    /// Displacement divided by `2^{−2j}`.
    pub s_j: f64,
    /// `max |θ(f′)|` over sample points of `A` inside `[0, ℓ_j]`.
    pub max_abs_theta_on_a: f64,
}

#[derive(Clone, Debug)]
pub struct CantorCurve {
    /// Removed open intervals, sorted.
    gaps: Vec<(f64, f64)>,
    /// `prefix[i] = ∫₀^{aᵢ} u`.
    prefix: Vec<f64>,
    /// Retained closed intervals, sorted.
    retained: Vec<(f64, f64)>,
    /// Left end `ℓ_j` boundaries of the leftmost intervals, `ℓ_0 = 1`.
    leftmost: Vec<f64>,
}

impl CantorCurve {
    /// Removes, at stage `j`, a centred open interval of length `r[j]` from
    /// every interval of the previous stage.
    pub fn new(r: &[f64]) -> Result<Self> {
        let mut retained = vec![(0.0, 1.0)];
        let mut gaps = Vec::new();
        let mut leftmost = vec![1.0];
        for (j, &rj) in r.iter().enumerate() {
            if !(rj > 0.0 && rj.is_finite()) {
                return Err(Error::InvalidGaps(format!("gap {j} has length {rj}")));
            }
            let mut next = Vec::with_capacity(retained.len() * 2);
            for &(a, b) in &retained {
                if b - a <= rj {
                    return Err(Error::InvalidGaps(format!(
                        "stage {j}: gap {rj} does not fit in an interval of length {}",
                        b - a
                    )));
                }
                let m = 0.5 * (a + b);
                let (ga, gb) = (m - 0.5 * rj, m + 0.5 * rj);
                gaps.push((ga, gb));
                next.push((a, ga));
                next.push((gb, b));
            }
            retained = next;
            leftmost.push(retained[0].1);
        }
        gaps.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut prefix = Vec::with_capacity(gaps.len());
        let mut acc = 0.0;
        for &(a, b) in &gaps {
            prefix.push(acc);
            acc += gap_displacement(b - a);
        }
        Ok(CantorCurve {
            gaps,
            prefix,
            retained,
            leftmost,
        })
    }

    /// `A = [0, 1]`: `u ≡ 0` and `f` is a horizontal segment.
    pub fn degenerate() -> Self {
        CantorCurve {
            gaps: Vec::new(),
            prefix: Vec::new(),
            retained: vec![(0.0, 1.0)],
            leftmost: vec![1.0],
        }
    }

    pub fn stages(&self) -> usize {
        self.leftmost.len() - 1
    }

    pub fn gaps(&self) -> &[(f64, f64)] {
        &self.gaps
    }

    pub fn retained(&self) -> &[(f64, f64)] {
        &self.retained
    }

    /// Index of the gap containing `x`, if any.
    fn gap_at(&self, x: f64) -> Option<usize> {
        let i = self.gaps.partition_point(|g| g.0 < x);
        (i > 0 && x < self.gaps[i - 1].1).then(|| i - 1)
    }

    /// `u(x) = √dist(x, A)`; on `[0, 1]` only gaps contribute.
    pub fn u(&self, x: f64) -> f64 {
        if x < 0.0 {
            return (-x).sqrt();
        }
        if x > 1.0 {
            return (x - 1.0).sqrt();
        }
        match self.gap_at(x) {
            Some(i) => {
                let (a, b) = self.gaps[i];
                (x - a).min(b - x).sqrt()
            }
            None => 0.0,
        }
    }

    /// `t(x) = ∫₀ˣ u` for `x ∈ [0, 1]`, piecewise `(2/3)(·)^{3/2}`.
    pub fn t(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        let i = self.gaps.partition_point(|g| g.0 < x);
        if i == 0 {
            return 0.0;
        }
        let (a, b) = self.gaps[i - 1];
        let before = self.prefix[i - 1];
        if x >= b {
            return before + gap_displacement(b - a);
        }
        let m = 0.5 * (a + b);
        if x <= m {
            before + 2.0 / 3.0 * (x - a).powf(1.5)
        } else {
            before + gap_displacement(b - a) - 2.0 / 3.0 * (b - x).powf(1.5)
        }
    }

    /// `f(x) = (x, 0, t(x))`.
    pub fn point(&self, x: f64) -> [f64; 3] {
        [x, 0.0, self.t(x)]
    }

    /// `f′(x)` from the derivative of each closed-form piece.
    pub fn velocity(&self, x: f64) -> [f64; 3] {
        let dt = match self.gap_at(x) {
            Some(i) => {
                let (a, b) = self.gaps[i];
                if x <= 0.5 * (a + b) {
                    (x - a).sqrt()
                } else {
                    (b - x).sqrt()
                }
            }
            None => 0.0,
        };
        [1.0, 0.0, dt]
    }

    /// `θ(f′(x)) = t′ − ½(x y′ − y x′)`.
    pub fn theta_of_velocity(&self, x: f64) -> f64 {
        let p = self.point(x);
        let v = self.velocity(x);
        v[2] - 0.5 * (p[0] * v[1] - p[1] * v[0])
    }

    /// Endpoints and midpoints of the retained intervals, all in `A`.
    pub fn samples_on_a(&self) -> Vec<f64> {
        self.retained
            .iter()
            .flat_map(|&(a, b)| [a, 0.5 * (a + b), b])
            .collect()
    }

    /// Per-stage rows for the leftmost gaps.
    pub fn report(&self) -> Vec<StageRow> {
        let samples = self.samples_on_a();
        (0..self.stages())
            .map(|j| {
                let a = self.leftmost[j + 1];
                let b = self.gaps[self.gap_at(a + f64::EPSILON).unwrap_or(0)].1;
                let rise = self.t(b) - self.t(a);
                let bound = self.leftmost[j];
                let theta = samples
                    .iter()
                    .filter(|&&x| x <= bound)
                    .map(|&x| self.theta_of_velocity(x).abs())
                    .fold(0.0, f64::max);
                StageRow {
                    stage: j,
                    gap_length: b - a,
                    vertical_displacement: rise,
                    s_j: rise / (-2.0 * j as f64).exp2(),
                    max_abs_theta_on_a: theta,
                }
            })
            .collect()
    }
}

/// Report for `levels` stages; `degenerate` uses `A = [0, 1]`.
pub fn cantor_report(levels: usize, gap_exponent: f64, degenerate: bool) -> Result<Vec<StageRow>> {
    if levels == 0 {
        return Err(Error::InvalidGaps("levels must be at least 1".into()));
    }
    if degenerate {
        return Ok((0..levels)
            .map(|j| StageRow {
                stage: j,
                gap_length: 0.0,
                vertical_displacement: 0.0,
                s_j: 0.0,
                max_abs_theta_on_a: 0.0,
            })
            .collect());
    }
    let r = default_gaps(levels, gap_exponent);
    let total: f64 = r.iter().enumerate().map(|(j, x)| (j as f64).exp2() * x).sum();
    if total >= 1.0 {
        return Err(Error::InvalidGaps(format!("Σ 2^j r_j = {total} is not below 1")));
    }
    Ok(CantorCurve::new(&r)?.report())
}

/// `(4/3)·2^{−3/2}·8^{−3/2}`, the constant value of `s_j` for default gaps.
pub fn default_s_limit() -> f64 {
    4.0 / 3.0 * 2f64.powf(-1.5) * 8f64.powf(-1.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;

    /// `∫_a^b √dist` by Gauss–Legendre after `y = a + s²` on each half gap.
    fn oracle_integral(c: &CantorCurve, x: f64) -> f64 {
        let (nodes, weights) = gauss_legendre(12);
        let mut total = 0.0;
        for &(a, b) in c.gaps() {
            let m = 0.5 * (a + b);
            for (lo, hi, left) in [(a, m, true), (m, b, false)] {
                let hi = hi.min(x);
                if hi <= lo {
                    continue;
                }
                // ∫_lo^hi √(dist) dy with dist = y − a (left half) or b − y
                if left {
                    let smax = (hi - a).sqrt();
                    for (s, w) in nodes.iter().zip(&weights) {
                        let s = 0.5 * smax * (s + 1.0);
                        total += 0.5 * smax * w * s * 2.0 * s;
                    }
                } else {
                    let (s0, s1) = ((b - hi).sqrt(), (b - lo).sqrt());
                    for (s, w) in nodes.iter().zip(&weights) {
                        let s = s0 + 0.5 * (s1 - s0) * (s + 1.0);
                        total += 0.5 * (s1 - s0) * w * s * 2.0 * s;
                    }
                }
            }
        }
        total
    }

    #[test]
    fn one_level_example() {
        let c = CantorCurve::new(&default_gaps(1, DEFAULT_GAP_EXPONENT)).unwrap();
        let (a, b) = c.retained()[0];
        for x in [a, b, 0.3, 0.45, 0.5, 0.55] {
            assert_eq!(c.theta_of_velocity(x), c.u(x));
        }
        let rows = c.report();
        assert_eq!(rows.len(), 1);
        let r = 1.0 / 8.0;
        assert!((rows[0].gap_length - r).abs() < 1e-15);
        assert!((rows[0].vertical_displacement - gap_displacement(r)).abs() < 1e-15);
    }

    #[test]
    fn antiderivative_matches_oracle() {
        let c = CantorCurve::new(&default_gaps(4, DEFAULT_GAP_EXPONENT)).unwrap();
        for i in 0..=50 {
            let x = i as f64 / 50.0;
            assert!((c.t(x) - oracle_integral(&c, x)).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn rescaled_rise_does_not_vanish() {
        let rows = cantor_report(13, DEFAULT_GAP_EXPONENT, false).unwrap();
        let min = rows.iter().map(|r| r.s_j).fold(f64::INFINITY, f64::min);
        assert!(min >= 0.9 * default_s_limit());
        for r in &rows {
            assert!(r.max_abs_theta_on_a <= f64::EPSILON);
            let exact = 4.0 / 3.0 * (r.gap_length / 2.0).powf(1.5);
            assert!((r.vertical_displacement - exact).abs() <= 1e-15);
        }
        // a faster-decaying sequence gives s_j → 0
        let rows = cantor_report(10, 2.0, false).unwrap();
        assert!(rows.last().unwrap().s_j < 0.1 * rows[0].s_j);
    }

    #[test]
    fn degenerate_and_invalid() {
        let c = CantorCurve::degenerate();
        assert_eq!(c.t(0.7), 0.0);
        assert_eq!(c.theta_of_velocity(0.7), 0.0);
        assert!(cantor_report(4, 0.0, false).is_err());
        assert!(cantor_report(0, 1.0, false).is_err());
        assert!(CantorCurve::new(&[0.5, 0.3]).is_err());
        assert_eq!(cantor_report(2, 1.0, true).unwrap().len(), 2);
    }
}
