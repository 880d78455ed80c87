//! Factorization of dense polynomials over `Q` and `F_p`.

pub mod integer;
pub mod modp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dense::DensePoly;
use crate::error::{domain, Result};
use crate::field::{CoefficientField, PrimeField, Rationals};
use crate::poly::{clear_rational_coefficients, content, eisenstein_applies, PuiseuxPoly};
use crate::rational::primes_up_to;

pub use integer::{factor_over_integers, IntegerFactorization, IntegerPolynomial};
pub use modp::{factor_mod_p, ModPolynomial};

/// Primes tried by the Eisenstein screen.
const EISENSTEIN_PRIME_BOUND: u64 = 1000;

/// Largest degree accepted by the factorization routines.
pub const DEFAULT_DEGREE_CAP: usize = 256;

/// `unit * Π factor^multiplicity`. Over `F_p` the factors are monic; over `Q`
/// they are primitive integer polynomials with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseFactorization<F: CoefficientField> {
    pub unit: F::Elem,
    pub factors: Vec<(DensePoly<F>, usize)>,
}

impl<F: CoefficientField> DenseFactorization<F> {
    pub fn expand(&self, field: &F) -> DensePoly<F> {
        self.factors.iter().fold(
            DensePoly::constant(field.clone(), self.unit.clone()),
            |acc, (g, m)| acc.mul(&g.pow(*m as u64)),
        )
    }
}

/// Fields with a complete factorization algorithm.
pub trait Factorable: CoefficientField {
    fn factor_dense(&self, f: &DensePoly<Self>) -> Result<DenseFactorization<Self>>;

    /// The unit `u` making `u * f` the canonical associate of a nonzero `f`
    /// with the given coefficients: monic over `F_p`, primitive integral with
    /// positive leading coefficient over `Q`.
    fn normalizing_unit(&self, coeffs: &[Self::Elem], leading: &Self::Elem) -> Self::Elem;

    fn normalize_associate(&self, f: &DensePoly<Self>) -> DensePoly<Self> {
        match f.leading() {
            Some(lead) => f.scale(&self.normalizing_unit(f.coeffs(), lead)),
            None => f.clone(),
        }
    }

    /// A prime at which Eisenstein's criterion proves `f` irreducible, if the
    /// field supports the test.
    fn eisenstein_prime(&self, _f: &PuiseuxPoly<Self>) -> Option<u64> {
        None
    }
}

impl Factorable for Rationals {
    fn factor_dense(&self, f: &DensePoly<Self>) -> Result<DenseFactorization<Self>> {
        if f.is_zero() {
            return domain("cannot factor the zero polynomial");
        }
        let (g, unit) = integer::integer_image(f);
        let out = factor_over_integers(&g)?;
        let factors = out
            .factors
            .iter()
            .map(|(h, m)| (integer::to_rational_poly(h), *m))
            .collect();
        Ok(DenseFactorization {
            unit: unit * BigRational::from_integer(out.content),
            factors,
        })
    }

    fn normalizing_unit(&self, coeffs: &[BigRational], leading: &BigRational) -> BigRational {
        let (mut num, mut den) = (BigInt::zero(), BigInt::one());
        for c in coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        let unit = BigRational::new(den, num);
        if leading.is_negative() {
            -unit
        } else {
            unit
        }
    }

    fn eisenstein_prime(&self, f: &PuiseuxPoly<Self>) -> Option<u64> {
        let (g, _) = clear_rational_coefficients(f);
        let c = content(&g).ok()?;
        let g = g.scale(&BigRational::from_integer(c).recip());
        let (q, constant) = g.terms().last()?;
        if !q.is_zero() {
            return None;
        }
        let constant = constant.to_integer();
        primes_up_to(EISENSTEIN_PRIME_BOUND)
            .into_iter()
            .filter(|&p| (&constant % p).is_zero())
            .find(|&p| eisenstein_applies(&g, p).unwrap_or(false))
    }
}

impl Factorable for PrimeField {
    fn factor_dense(&self, f: &DensePoly<Self>) -> Result<DenseFactorization<Self>> {
        if f.degree().unwrap_or(0) > DEFAULT_DEGREE_CAP {
            return Err(crate::Error::CapExceeded(format!(
                "degree exceeds the factorization cap {DEFAULT_DEGREE_CAP}"
            )));
        }
        factor_mod_p(f)
    }

    fn normalizing_unit(&self, _coeffs: &[u64], leading: &u64) -> u64 {
        self.inv(leading).unwrap_or(1)
    }
}

/// Irreducibility of a dense polynomial of positive degree.
pub fn is_irreducible_poly<F: Factorable>(f: &DensePoly<F>) -> Result<bool> {
    if f.is_constant() {
        return domain("constant polynomials are units or zero");
    }
    let out = f.field().factor_dense(f)?;
    Ok(out.factors.len() == 1 && out.factors[0].1 == 1)
}
