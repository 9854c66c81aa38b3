use std::collections::BTreeMap;

use num_traits::Zero;

use super::covector::{Basis, MultiCovector, Space};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Q;

/// One block of a [`GradedOperator`]: a matrix from degree `source` to
/// degree `target` in the monomial bases.
#[derive(Clone, Debug)]
pub struct Block {
    pub target: usize,
    pub matrix: Matrix<Q>,
    pub source_basis: Basis,
    pub target_basis: Basis,
}

/// A family of exact matrices indexed by source degree.
///
/// Degrees without a block act as zero.
#[derive(Clone, Debug)]
pub struct GradedOperator {
    n: usize,
    space: Space,
    blocks: BTreeMap<usize, Block>,
}

impl GradedOperator {
    pub fn new(n: usize, space: Space) -> Self {
        GradedOperator {
            n,
            space,
            blocks: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn max_degree(&self) -> usize {
        self.space.generators(self.n)
    }

    pub fn insert(&mut self, source: usize, target: usize, matrix: Matrix<Q>) {
        let source_basis = Basis::new(self.n, self.space, source);
        let target_basis = Basis::new(self.n, self.space, target);
        assert_eq!(matrix.cols(), source_basis.len(), "block column count");
        assert_eq!(matrix.rows(), target_basis.len(), "block row count");
        self.blocks.insert(
            source,
            Block {
                target,
                matrix,
                source_basis,
                target_basis,
            },
        );
    }

    /// Tabulates a linear map on covectors by applying it to each basis
    /// monomial of every degree in `0..=max_degree` with `target(k)` defined.
    pub fn from_fn(
        n: usize,
        space: Space,
        target: impl Fn(usize) -> Option<usize>,
        f: impl Fn(&MultiCovector) -> MultiCovector,
    ) -> Self {
        let mut op = GradedOperator::new(n, space);
        for k in 0..=space.generators(n) {
            let Some(t) = target(k) else { continue };
            if t > space.generators(n) {
                continue;
            }
            let sb = Basis::new(n, space, k);
            let tb = Basis::new(n, space, t);
            let cols: Vec<Vec<Q>> = sb
                .monomials()
                .iter()
                .map(|&m| {
                    let image = f(&MultiCovector::from_monomial(n, m, Q::from_integer(1.into())));
                    assert_eq!(image.degree(), t, "tabulated map changed degree unexpectedly");
                    image.to_vector(&tb)
                })
                .collect();
            op.insert(k, t, Matrix::from_columns(tb.len(), &cols));
        }
        op
    }

    pub fn identity(n: usize, space: Space) -> Self {
        Self::from_fn(n, space, Some, Clone::clone)
    }

    pub fn block(&self, source: usize) -> Option<&Block> {
        self.blocks.get(&source)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&usize, &Block)> {
        self.blocks.iter()
    }

    /// Applies the operator; `Ok(None)` when the source degree has no block.
    pub fn apply(&self, a: &MultiCovector) -> Result<Option<MultiCovector>> {
        if a.n() != self.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: a.n(),
            });
        }
        if self.space == Space::Horizontal && !a.is_horizontal() {
            return Err(Error::NotHorizontal);
        }
        let Some(b) = self.blocks.get(&a.degree()) else {
            return Ok(None);
        };
        let v = b.matrix.mul_vec(&a.to_vector(&b.source_basis));
        Ok(Some(MultiCovector::from_vector(
            self.n,
            b.target,
            &b.target_basis,
            &v,
        )))
    }

    /// Like [`Self::apply`] but returns zero of degree `fallback` for missing blocks.
    pub fn apply_or_zero(&self, a: &MultiCovector, fallback: usize) -> Result<MultiCovector> {
        Ok(self
            .apply(a)?
            .unwrap_or_else(|| MultiCovector::zero(self.n, fallback)))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedOperator) -> Result<GradedOperator> {
        if self.n != first.n || self.space != first.space {
            return Err(Error::RankMismatch {
                left: self.n,
                right: first.n,
            });
        }
        let mut out = GradedOperator::new(self.n, self.space);
        for (&k, b1) in &first.blocks {
            if let Some(b2) = self.blocks.get(&b1.target) {
                out.insert(k, b2.target, b2.matrix.matmul(&b1.matrix));
            }
        }
        Ok(out)
    }

    /// Metric adjoint: transposed blocks with source and target swapped.
    pub fn adjoint(&self) -> GradedOperator {
        let mut out = GradedOperator::new(self.n, self.space);
        for (&k, b) in &self.blocks {
            out.insert(b.target, k, b.matrix.transpose());
        }
        out
    }

    /// `self^k`, with `self^0` the identity.
    pub fn power(&self, k: usize) -> Result<GradedOperator> {
        let mut acc = GradedOperator::identity(self.n, self.space);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    fn combine(&self, other: &GradedOperator, sign: i64) -> Result<GradedOperator> {
        let mut out = GradedOperator::new(self.n, self.space);
        let keys: std::collections::BTreeSet<usize> =
            self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        for k in keys {
            let (a, b) = (self.blocks.get(&k), other.blocks.get(&k));
            let (t, m) = match (a, b) {
                (Some(a), Some(b)) => {
                    if a.target != b.target {
                        return Err(Error::DegreeMismatch {
                            expected: a.target,
                            found: b.target,
                        });
                    }
                    let bm = if sign < 0 { -&b.matrix } else { b.matrix.clone() };
                    (a.target, &a.matrix + &bm)
                }
                (Some(a), None) => (a.target, a.matrix.clone()),
                (None, Some(b)) => (
                    b.target,
                    if sign < 0 { -&b.matrix } else { b.matrix.clone() },
                ),
                (None, None) => unreachable!(),
            };
            out.insert(k, t, m);
        }
        Ok(out)
    }

    pub fn add(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.combine(other, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.matrix.is_zero())
    }

    /// Whether the two operators agree on every degree (missing blocks = 0).
    pub fn equals(&self, other: &GradedOperator) -> bool {
        self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    pub fn rank(&self, source: usize) -> usize {
        self.blocks.get(&source).map_or(0, |b| b.matrix.rank())
    }

    pub fn nnz(&self) -> usize {
        self.blocks
            .values()
            .map(|b| {
                (0..b.matrix.rows())
                    .flat_map(|i| (0..b.matrix.cols()).map(move |j| (i, j)))
                    .filter(|&ij| !b.matrix[ij].is_zero())
                    .count()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    fn lefschetz(n: usize) -> GradedOperator {
        GradedOperator::from_fn(
            n,
            Space::Horizontal,
            |k| Some(k + 2),
            |a| a.lefschetz_raise().unwrap(),
        )
    }

    #[test]
    fn adjoint_of_adjoint_is_identity() {
        let l = lefschetz(2);
        let aa = l.adjoint().adjoint();
        assert!(aa.equals(&l));
    }

    #[test]
    fn lambda_matrix_is_transpose_of_l() {
        for n in 1..=3 {
            let lam = GradedOperator::from_fn(
                n,
                Space::Horizontal,
                |k| k.checked_sub(2),
                |a| a.lefschetz_lower().unwrap(),
            );
            assert!(lam.equals(&lefschetz(n).adjoint()));
        }
    }

    #[test]
    fn apply_and_compose() {
        let n = 2;
        let l = lefschetz(n);
        let l2 = l.power(2).unwrap();
        let one = MultiCovector::one(n);
        let got = l2.apply(&one).unwrap().unwrap();
        // dθ ∧ dθ = 2 dx₁∧dy₁∧dx₂∧dy₂ up to reordering
        let dt = MultiCovector::dtheta(n);
        assert_eq!(got, dt.wedge(&dt).unwrap());
        assert_eq!(got.coeff(crate::Monomial::from_sorted(&[0, 1, 2, 3])), qi(-2));
        assert!(l.apply(&MultiCovector::theta(n)).is_err());
        let id = GradedOperator::identity(n, Space::Full);
        assert!(id.compose(&id).unwrap().equals(&id));
    }
}
