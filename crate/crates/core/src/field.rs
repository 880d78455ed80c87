//! Coefficient fields for semigroup algebras: the rationals and prime fields.
//!
//! A field is a small context value (the prime field carries its modulus), and
//! all arithmetic on elements goes through it. This keeps the modulus a
//! runtime choice while polynomial code stays generic.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{is_prime, pow_mod};

/// Which field a polynomial's coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => f.write_str("Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// Accepts `Q` or `Fp:<p>` with `p` prime.
impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Domain(format!("unknown field {s:?}; expected Q or Fp:<p>")))?;
        PrimeField::new(p).map(|f| f.descriptor())
    }
}

pub trait CoefficientField: Clone + PartialEq + Eq + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn descriptor(&self) -> FieldDescriptor;
    /// Zero for the rationals, `p` for a prime field.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    #[allow(clippy::wrong_self_convention)]
    fn from_integer(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational; fails in `F_p` when `p` divides the denominator.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Whether `a` prints with a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|inv| self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

/// The field `Q` with `BigRational` elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl CoefficientField for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_integer(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

/// The prime field `F_p`; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("prime field modulus {p} is not prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }
}

impl CoefficientField for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        // Fermat: a^(p-2)
        (*a != 0).then(|| pow_mod(*a, self.p - 2, self.p))
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_integer(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.from_integer(q.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::Domain(format!("{q} has no image in F_{}", self.p)))?;
        Ok(self.mul(&self.from_integer(q.numer()), &inv))
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.neg(&3), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_integer(&BigInt::from(-1)), 6);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        assert!(f
            .from_rational(&BigRational::new(1.into(), 7.into()))
            .is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn descriptor_text() {
        assert_eq!(
            "Q".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Rationals
        );
        assert_eq!(
            "Fp:13".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::PrimeField(13)
        );
        assert!("Fp:12".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
        assert_eq!(FieldDescriptor::PrimeField(5).to_string(), "Fp:5");
    }
}
