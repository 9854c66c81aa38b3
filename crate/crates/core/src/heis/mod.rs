//! The group ℍⁿ and its left-invariant exterior algebra.

mod covector;
mod group;
mod operator;

pub use covector::{coframe_name, combinations, Basis, Monomial, MultiCovector, Space};
pub use group::{GroupPoint, Scalar};
pub use operator::{Block, GradedOperator};
