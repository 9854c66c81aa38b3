use std::fmt;

use num_traits::{Num, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Q;

/// Scalars a [`GroupPoint`] can carry: exact rationals or binary floats.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Num + std::ops::Neg<Output = Self>
{
    fn to_f64(&self) -> f64;
    fn from_q(q: &Q) -> Self;
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl Scalar for Q {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_q(q: &Q) -> Self {
        crate::to_f64(q)
    }
}

/// A point `(x, y, t)` of ℍⁿ in exponential coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupPoint<T = Q> {
    pub x: Vec<T>,
    pub y: Vec<T>,
    pub t: T,
}

impl<T: Scalar> GroupPoint<T> {
    pub fn new(x: Vec<T>, y: Vec<T>, t: T) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::RankMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        Ok(GroupPoint { x, y, t })
    }

    pub fn identity(n: usize) -> Self {
        GroupPoint {
            x: vec![T::zero(); n],
            y: vec![T::zero(); n],
            t: T::zero(),
        }
    }

    /// Builds a point from `(x₁..xₙ, y₁..yₙ, t)`.
    pub fn from_coords(n: usize, c: &[T]) -> Result<Self> {
        if c.len() != 2 * n + 1 {
            return Err(Error::RankMismatch {
                left: 2 * n + 1,
                right: c.len(),
            });
        }
        Ok(GroupPoint {
            x: c[..n].to_vec(),
            y: c[n..2 * n].to_vec(),
            t: c[2 * n].clone(),
        })
    }

    pub fn coords(&self) -> Vec<T> {
        let mut c = self.x.clone();
        c.extend(self.y.iter().cloned());
        c.push(self.t.clone());
        c
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn inverse(&self) -> Self {
        GroupPoint {
            x: self.x.iter().map(|v| -v.clone()).collect(),
            y: self.y.iter().map(|v| -v.clone()).collect(),
            t: -self.t.clone(),
        }
    }

    /// `p · q = (x+x', y+y', t+t'+½Σ(xⱼy'ⱼ − yⱼx'ⱼ))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let mut omega = T::zero();
        for j in 0..self.n() {
            omega = omega + self.x[j].clone() * other.y[j].clone()
                - self.y[j].clone() * other.x[j].clone();
        }
        Ok(GroupPoint {
            x: add(&self.x, &other.x),
            y: add(&self.y, &other.y),
            t: self.t.clone() + other.t.clone() + T::half() * omega,
        })
    }

    /// `𝔰_λ(x, y, t) = (λx, λy, λ²t)`.
    pub fn dilate(&self, lambda: &T) -> Result<Self> {
        if *lambda <= T::zero() {
            return Err(Error::NonPositiveScale(lambda.to_string()));
        }
        Ok(GroupPoint {
            x: self.x.iter().map(|v| v.clone() * lambda.clone()).collect(),
            y: self.y.iter().map(|v| v.clone() * lambda.clone()).collect(),
            t: self.t.clone() * lambda.clone() * lambda.clone(),
        })
    }

    /// `|p̄|⁴ + 16t²`, the fourth power of the gauge norm.
    pub fn koranyi_norm_pow4(&self) -> T {
        let mut r2 = T::zero();
        for v in self.x.iter().chain(&self.y) {
            r2 = r2 + v.clone() * v.clone();
        }
        let sixteen = (0..16).fold(T::zero(), |a, _| a + T::one());
        r2.clone() * r2 + sixteen * self.t.clone() * self.t.clone()
    }

    /// Cygan–Korányi norm `(|p̄|⁴ + 16t²)^{1/4}`.
    pub fn koranyi_norm(&self) -> f64 {
        self.koranyi_norm_pow4().to_f64().sqrt().sqrt()
    }

    /// Fourth power of `ρ(p⁻¹q)`.
    pub fn koranyi_distance_pow4(&self, other: &Self) -> Result<T> {
        Ok(self.inverse().mul(other)?.koranyi_norm_pow4())
    }

    /// Matrix taking coordinate components `(∂x, ∂y, ∂t)` at `p` to frame
    /// components `(X, Y, Z)`. Only the `Z` row differs from the identity:
    /// `∂xᵢ ↦ Xᵢ + (yᵢ/2)Z`, `∂yᵢ ↦ Yᵢ − (xᵢ/2)Z`.
    pub fn frame_change(&self) -> Matrix<T> {
        let n = self.n();
        let d = 2 * n + 1;
        let mut m = Matrix::<T>::identity(d);
        for i in 0..n {
            m[(2 * n, i)] = self.y[i].clone() * T::half();
            m[(2 * n, n + i)] = -(self.x[i].clone() * T::half());
        }
        m
    }

    pub fn to_f64(&self) -> GroupPoint<f64> {
        GroupPoint {
            x: self.x.iter().map(Scalar::to_f64).collect(),
            y: self.y.iter().map(Scalar::to_f64).collect(),
            t: self.t.to_f64(),
        }
    }
}

fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(u, v)| u.clone() + v.clone()).collect()
}

impl<T: Scalar> fmt::Display for GroupPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};
    use proptest::prelude::*;

    fn p1(x: Q, y: Q, t: Q) -> GroupPoint {
        GroupPoint::new(vec![x], vec![y], t).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let a = p1(qi(1), qi(0), qi(0));
        let b = p1(qi(0), qi(1), qi(0));
        assert_eq!(a.mul(&b).unwrap(), p1(qi(1), qi(1), q(1, 2)));
        assert_eq!(b.mul(&a).unwrap(), p1(qi(1), qi(1), q(-1, 2)));
        let e = GroupPoint::identity(1);
        assert_eq!(e.mul(&a).unwrap(), a);
        assert!(a.mul(&GroupPoint::identity(2)).is_err());
    }

    #[test]
    fn dilation_examples() {
        let p = p1(qi(1), qi(0), qi(1));
        assert_eq!(p.dilate(&qi(2)).unwrap(), p1(qi(2), qi(0), qi(4)));
        assert_eq!(p.dilate(&qi(1)).unwrap(), p);
        let e = GroupPoint::<Q>::identity(1);
        assert_eq!(e.dilate(&qi(3)).unwrap(), e);
        assert!(p.dilate(&qi(0)).is_err());
        assert!(p.dilate(&qi(-1)).is_err());
    }

    #[test]
    fn koranyi_examples() {
        assert_eq!(p1(qi(1), qi(0), qi(0)).koranyi_norm(), 1.0);
        assert_eq!(p1(qi(0), qi(0), qi(1)).koranyi_norm(), 2.0);
        let r = p1(qi(1), qi(1), qi(0)).koranyi_norm();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn frame_change_examples() {
        let e = GroupPoint::<Q>::identity(1);
        assert_eq!(e.frame_change(), Matrix::identity(3));
        // ∂x at (0,2,0) is X + Z
        let m = p1(qi(0), qi(2), qi(0)).frame_change();
        assert_eq!(m.column(0), vec![qi(1), qi(0), qi(1)]);
        // ∂y at (4,0,0) is Y − 2Z
        let m = p1(qi(4), qi(0), qi(0)).frame_change();
        assert_eq!(m.column(1), vec![qi(0), qi(1), qi(-2)]);
    }

    #[test]
    fn float_backend() {
        let a = GroupPoint::new(vec![1.0], vec![0.0], 0.0).unwrap();
        let b = GroupPoint::new(vec![0.0], vec![1.0], 0.0).unwrap();
        assert_eq!(a.mul(&b).unwrap().t, 0.5);
        assert!(a.dilate(&-1.0).is_err());
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-20i64..20, 1i64..6).prop_map(|(a, b)| q(a, b))
    }

    fn point(n: usize) -> impl Strategy<Value = GroupPoint> {
        proptest::collection::vec(small_q(), 2 * n + 1)
            .prop_map(move |c| GroupPoint::from_coords(n, &c).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(p in point(2), r in point(2), s in point(2)) {
            let e = GroupPoint::identity(2);
            prop_assert_eq!(p.mul(&e).unwrap(), p.clone());
            prop_assert_eq!(e.mul(&p).unwrap(), p.clone());
            prop_assert_eq!(p.mul(&p.inverse()).unwrap(), e);
            let left = p.mul(&r).unwrap().mul(&s).unwrap();
            let right = p.mul(&r.mul(&s).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn dilation_is_homomorphism(p in point(1), r in point(1), l in 1i64..9, m in 1i64..9) {
            let (l, m) = (q(l, 3), q(m, 2));
            let lm = &l * &m;
            prop_assert_eq!(
                p.dilate(&m).unwrap().dilate(&l).unwrap(),
                p.dilate(&lm).unwrap()
            );
            prop_assert_eq!(
                p.mul(&r).unwrap().dilate(&l).unwrap(),
                p.dilate(&l).unwrap().mul(&r.dilate(&l).unwrap()).unwrap()
            );
            // ρ(𝔰_λ p)⁴ = λ⁴ ρ(p)⁴
            let l4 = num_traits::pow(l.clone(), 4);
            prop_assert_eq!(p.dilate(&l).unwrap().koranyi_norm_pow4(), l4 * p.koranyi_norm_pow4());
        }

        #[test]
        fn gauge_distance_left_invariant(g in point(2), p in point(2), r in point(2)) {
            let d = p.koranyi_distance_pow4(&r).unwrap();
            let gp = g.mul(&p).unwrap();
            let gr = g.mul(&r).unwrap();
            prop_assert_eq!(gp.koranyi_distance_pow4(&gr).unwrap(), d);
        }
    }
}
