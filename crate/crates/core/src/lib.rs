//! Exact computations on the Heisenberg groups ℍⁿ.
//!
//! The crate is organised bottom-up:
//!
//! * [`heis`]: group law, dilations, gauge norm, and the weight-graded exterior
//!   algebra of left-invariant covectors with its Lefschetz and Hodge operators.
//! * [`poly`] and [`forms`]: differential forms with exact polynomial
//!   coefficients, written in the left-invariant coframe.
//! * [`rumin`]: `d₀`, its pseudo-inverse, the projectors `Π_E₀`/`Π_E` and the
//!   Rumin differential `d_c`.
//! * [`currents`]: currents of integration over parametrized chains and
//!   form-represented currents, with masses, classification and the
//!   Rumin/Federer–Fleming correspondences.
//! * [`conformance`]: the exact identity suite that certifies all of the above.
//!
//! All algebraic work is done over [`Q`] (arbitrary precision rationals);
//! binary floats appear only inside quadrature.

pub mod conformance;
pub mod currents;
pub mod error;
pub mod expr;
pub mod forms;
pub mod heis;
pub mod linalg;
pub mod poly;
pub mod quadrature;
pub mod rumin;
pub mod sampling;

pub use error::{Error, Result};
pub use forms::{BoxDomain, PolyForm};
pub use heis::{GradedOperator, GroupPoint, Monomial, MultiCovector};
pub use linalg::Matrix;
pub use poly::Polynomial;
pub use rumin::RuminComplex;

/// Exact scalar field used by every algebraic operator.
pub type Q = num_rational::BigRational;

/// Shorthand for building small rationals.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Converts an exact rational to the nearest `f64`.
pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
