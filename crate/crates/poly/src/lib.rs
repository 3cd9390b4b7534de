//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are sparse maps from monomials to nonzero [`Rational`]
//! coefficients. Variables are tagged [`Var`] values that carry their printed
//! label alongside a structural sort key, so the same type serves the affine
//! chart coordinates, the reduced coordinates and the Plücker coordinates.
//!
//! The [`groebner`] module provides Buchberger's algorithm together with the
//! ideal operations built on it: membership, equality, elimination,
//! intersection, ideal quotients and saturation.

mod error;
pub mod groebner;
mod order;
mod poly;
mod var;

pub use error::PolyError;
pub use groebner::{GbOptions, GroebnerBasis};
pub use order::MonomialOrder;
pub use poly::{Monomial, Poly};
pub use var::{Var, VarKey};

/// Arbitrary-precision rational numbers; the denominator is always positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
