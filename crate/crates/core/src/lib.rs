//! Exact computation in Puiseux monoids and their semigroup algebras.
//!
//! The polynomial code is generic over a [`field::CoefficientField`]; the
//! aliases below fix the two supported fields.

pub mod algebra;
pub mod dense;
pub mod error;
pub mod factor;
pub mod field;
pub mod monoid;
pub mod poly;
pub mod rational;

pub use algebra::{
    factor_in_algebra, frobenius_pth_root, is_irreducible, is_irreducible_integral, is_unit,
    monomial_is_irreducible, uufd_check, Certificate, FactorOutcome, IrreducibilityVerdict,
};
pub use error::{Error, Result};
pub use factor::{
    factor_mod_p, factor_over_integers, DenseFactorization, Factorable, IntegerFactorization,
    IntegerPolynomial, ModPolynomial,
};
pub use field::{CoefficientField, FieldDescriptor, PrimeField, Rationals};
pub use monoid::{Atoms, DifferenceGroup, MonoidSpec};
pub use poly::PuiseuxPoly;
pub use rational::{ReducedRational, Valuation};

/// Puiseux polynomials with rational coefficients.
pub type QPoly = poly::PuiseuxPoly<field::Rationals>;
/// Puiseux polynomials over a prime field.
pub type FpPoly = poly::PuiseuxPoly<field::PrimeField>;
