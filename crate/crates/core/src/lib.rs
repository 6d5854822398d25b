//! Exact computations with 2-periodic complexes of graded free modules over
//! polynomial rings with rational coefficients.

pub mod cosection;
pub mod error;
pub mod field;
pub mod kclass;
pub mod koszul;
pub mod module;
pub mod ring;
pub mod two_periodic;

pub use error::{Error, Result};
pub use field::Field;

/// Arbitrary-precision rationals, the default coefficient field.
pub type Q = num_rational::BigRational;

pub type QPolynomial = ring::Polynomial<Q>;
pub type QIdeal = ring::Ideal<Q>;
pub type QMatrix = module::Matrix<Q>;
pub type QPresentedModule = module::PresentedModule<Q>;
pub type QTwoPeriodicComplex = two_periodic::TwoPeriodicComplex<Q>;
pub type QKClass = kclass::KClass<Q>;
