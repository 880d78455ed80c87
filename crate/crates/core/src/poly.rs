//! Elements of a semigroup algebra `F[M]` in canonical form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dense::DensePoly;
use crate::error::{domain, Error, Result};
use crate::field::{CoefficientField, Rationals};
use crate::monoid::MonoidSpec;
use crate::rational::{denominator_lcm, is_prime, ReducedRational};

/// Hard ceiling on the degree of an inflated polynomial.
const INFLATE_LIMIT: usize = 1 << 20;

/// `Σ α_i X^{q_i}` with `q_1 > ... > q_k >= 0` and every `α_i ≠ 0`.
/// The zero element has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PuiseuxPoly<F: CoefficientField> {
    field: F,
    terms: Vec<(ReducedRational, F::Elem)>,
}

impl<F: CoefficientField> PuiseuxPoly<F> {
    /// Merges like exponents, drops zero coefficients and sorts.
    pub fn from_terms(
        field: F,
        terms: impl IntoIterator<Item = (ReducedRational, F::Elem)>,
    ) -> Self {
        let mut merged: BTreeMap<ReducedRational, F::Elem> = BTreeMap::new();
        for (q, c) in terms {
            let slot = merged.entry(q).or_insert_with(|| field.zero());
            *slot = field.add(slot, &c);
        }
        let terms = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        PuiseuxPoly { field, terms }
    }

    /// Like [`PuiseuxPoly::from_terms`] but takes signed exponents and rejects
    /// negative ones.
    pub fn canonicalize(field: F, terms: Vec<(BigRational, F::Elem)>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(q, c)| Ok((ReducedRational::from_big_rational(q)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(field, terms))
    }

    pub fn zero(field: F) -> Self {
        PuiseuxPoly {
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::from_terms(field, [(ReducedRational::zero(), c)])
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::constant(field, one)
    }

    /// `c X^q`.
    pub fn monomial(field: F, c: F::Elem, q: ReducedRational) -> Self {
        Self::from_terms(field, [(q, c)])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Terms in canonical (strictly decreasing exponent) order.
    pub fn terms(&self) -> &[(ReducedRational, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(q, _)| q.is_zero())
    }

    /// `deg(f)`, the largest exponent.
    pub fn degree(&self) -> Result<ReducedRational> {
        match self.terms.first() {
            Some((q, _)) => Ok(q.clone()),
            None => domain("the zero polynomial has no degree"),
        }
    }

    /// `Supp(f)` in decreasing order.
    pub fn support(&self) -> Vec<ReducedRational> {
        self.terms.iter().map(|(q, _)| q.clone()).collect()
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of `X^q` (zero when absent).
    pub fn coefficient(&self, q: &ReducedRational) -> F::Elem {
        self.terms
            .iter()
            .find(|(e, _)| e == q)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return domain(format!(
                "field mismatch: {} vs {}",
                self.field.descriptor(),
                other.field.descriptor()
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::from_terms(
            self.field.clone(),
            self.terms.iter().chain(&other.terms).cloned(),
        ))
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(q, c)| (q.clone(), self.field.neg(c)));
        Self::from_terms(self.field.clone(), terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        let products = self
            .terms
            .iter()
            .flat_map(|(p, a)| other.terms.iter().map(move |(q, b)| (p + q, f.mul(a, b))));
        Ok(Self::from_terms(f.clone(), products.collect::<Vec<_>>()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(q, a)| (q.clone(), self.field.mul(a, c)));
        Self::from_terms(self.field.clone(), terms)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            exp >>= 1;
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient().and_then(|c| self.field.inv(c)) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// `lcm d(Supp(f))`.
    pub fn denominator_lcm(&self) -> BigInt {
        denominator_lcm(self.terms.iter().map(|(q, _)| q))
    }

    /// Fails with [`Error::ExponentNotInMonoid`] on the first exponent outside `M`.
    pub fn check_exponents(&self, monoid: &MonoidSpec) -> Result<()> {
        for (q, _) in &self.terms {
            if !monoid.contains(q)? {
                return Err(Error::ExponentNotInMonoid(q.clone()));
            }
        }
        Ok(())
    }

    /// The ordinary polynomial `f(X^m)`; `m` must clear every exponent
    /// denominator.
    pub fn inflate(&self, m: &BigInt) -> Result<DensePoly<F>> {
        if !m.is_positive() {
            return domain("inflation factor must be positive");
        }
        let mut exps = Vec::with_capacity(self.terms.len());
        for (q, c) in &self.terms {
            let e = q.scaled_integer(m).ok_or_else(|| {
                Error::Domain(format!("{m} is not a multiple of the denominator of {q}"))
            })?;
            let e = e
                .to_usize()
                .filter(|&e| e <= INFLATE_LIMIT)
                .ok_or_else(|| Error::CapExceeded(format!("inflating by {m} gives degree {e}")))?;
            exps.push((e, c));
        }
        let len = exps.first().map_or(0, |(e, _)| e + 1);
        let mut coeffs = vec![self.field.zero(); len];
        for (e, c) in exps {
            coeffs[e] = c.clone();
        }
        Ok(DensePoly::new(self.field.clone(), coeffs))
    }

    /// `g(X^{1/m})`, checking that every resulting exponent lies in `M`.
    pub fn deflate(g: &DensePoly<F>, m: &BigInt, monoid: &MonoidSpec) -> Result<Self> {
        if !m.is_positive() {
            return domain("deflation factor must be positive");
        }
        let field = g.field().clone();
        let mut terms = Vec::new();
        for (k, c) in g.coeffs().iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            let q = ReducedRational::new(k, m.clone())?;
            if !monoid.contains(&q)? {
                return Err(Error::ExponentNotInMonoid(q));
            }
            terms.push((q, c.clone()));
        }
        Ok(Self::from_terms(field, terms))
    }
}

impl<F: CoefficientField> fmt::Debug for PuiseuxPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints in the polynomial text grammar, e.g. `X^(3/2) + 2*X^(1/2) + 2`.
impl<F: CoefficientField> fmt::Display for PuiseuxPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let field = &self.field;
        for (i, (q, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (i, negative) {
                (0, true) => out.write_str("-")?,
                (0, false) => {}
                (_, true) => out.write_str(" - ")?,
                (_, false) => out.write_str(" + ")?,
            }
            let coeff = field.format_elem(&abs);
            let coeff = if coeff.contains('/') {
                format!("({coeff})")
            } else {
                coeff
            };
            if q.is_zero() {
                out.write_str(&coeff)?;
                continue;
            }
            if !field.is_one(&abs) {
                write!(out, "{coeff}*")?;
            }
            if q.is_one() {
                out.write_str("X")?;
            } else if q.is_integer() {
                write!(out, "X^{q}")?;
            } else {
                write!(out, "X^({q})")?;
            }
        }
        Ok(())
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for ReducedRational {
    fn is_one(&self) -> bool {
        self.numer().is_one() && self.denom().is_one()
    }
}

/// Coefficients of an element of `Z[M]`, in canonical order.
pub fn integer_coefficients(f: &PuiseuxPoly<Rationals>) -> Result<Vec<BigInt>> {
    f.terms()
        .iter()
        .map(|(_, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                domain(format!("coefficient {c} is not an integer"))
            }
        })
        .collect()
}

/// Returns `(g, m)` with `g = m f` having integer coefficients, where `m` is
/// the least common multiple of the coefficient denominators.
pub fn clear_rational_coefficients(f: &PuiseuxPoly<Rationals>) -> (PuiseuxPoly<Rationals>, BigInt) {
    let m = f
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    (f.scale(&BigRational::from_integer(m.clone())), m)
}

/// `c(f)`: the positive gcd of the integer coefficients.
pub fn content(f: &PuiseuxPoly<Rationals>) -> Result<BigInt> {
    if f.is_zero() {
        return domain("the zero polynomial has no content");
    }
    Ok(integer_coefficients(f)?
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c)))
}

/// Primitive: the content is a unit of `Z`.
pub fn is_primitive(f: &PuiseuxPoly<Rationals>) -> Result<bool> {
    content(f).map(|c| c.is_one())
}

/// Eisenstein's criterion at the prime `p`: the leading coefficient is not
/// divisible by `p`, all others are, and the constant term is not divisible
/// by `p^2`. Elements without a constant term, and constants, never qualify.
pub fn eisenstein_applies(f: &PuiseuxPoly<Rationals>, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let coeffs = integer_coefficients(f)?;
    if coeffs.len() < 2 || !f.terms().last().is_some_and(|(q, _)| q.is_zero()) {
        return Ok(false);
    }
    let p = BigInt::from(p);
    let p2 = &p * &p;
    let (lead, rest) = coeffs.split_first().expect("at least two terms");
    let constant = rest.last().expect("at least two terms");
    Ok(!(lead % &p).is_zero()
        && rest.iter().all(|c| (c % &p).is_zero())
        && !(constant % &p2).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn q(s: &str) -> ReducedRational {
        s.parse().unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qpoly(terms: &[(&str, i64)]) -> PuiseuxPoly<Rationals> {
        PuiseuxPoly::from_terms(Rationals, terms.iter().map(|(e, c)| (q(e), r(*c))))
    }

    #[test]
    fn canonical_form() {
        let f2 = PrimeField::new(2).unwrap();
        let z = PuiseuxPoly::from_terms(f2, [(q("1/2"), 1), (q("1/2"), 1)]);
        assert!(z.is_zero());
        let f = qpoly(&[("0", 3), ("1/3", 2), ("0", -3)]);
        assert_eq!(f, qpoly(&[("1/3", 2)]));
        let f = qpoly(&[("1/3", 2), ("1/2", 5)]);
        assert_eq!(f.support(), vec![q("1/2"), q("1/3")]);
        assert_eq!(f.to_string(), "5*X^(1/2) + 2*X^(1/3)");
        let neg = PuiseuxPoly::canonicalize(Rationals, vec![(r(-1), r(1))]);
        assert!(matches!(neg, Err(Error::Domain(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let a = qpoly(&[("1/2", 1), ("0", 1)]);
        let b = qpoly(&[("1/2", 1), ("0", -1)]);
        assert_eq!(a.mul(&b).unwrap(), qpoly(&[("1", 1), ("0", -1)]));
        let f2 = PrimeField::new(2).unwrap();
        let c = PuiseuxPoly::from_terms(f2, [(q("1/6"), 1), (q("0"), 1)]);
        let sq = c.mul(&c).unwrap();
        assert_eq!(
            sq,
            PuiseuxPoly::from_terms(f2, [(q("1/3"), 1), (q("0"), 1)])
        );
        assert_eq!(a.add(&PuiseuxPoly::zero(Rationals)).unwrap(), a);
        let f3 = PrimeField::new(3).unwrap();
        assert!(PuiseuxPoly::one(f2).add(&PuiseuxPoly::one(f3)).is_err());
    }

    #[test]
    fn degree_and_support() {
        let f = qpoly(&[("3/2", 1), ("1/2", 2), ("0", 2)]);
        assert_eq!(f.degree().unwrap(), q("3/2"));
        assert_eq!(f.support(), vec![q("3/2"), q("1/2"), q("0")]);
        assert_eq!(qpoly(&[("0", 5)]).degree().unwrap(), q("0"));
        let g = qpoly(&[("1/2", 1), ("0", 1)])
            .mul(&qpoly(&[("1/3", 1), ("0", 1)]))
            .unwrap();
        assert_eq!(g.degree().unwrap(), q("5/6"));
        assert!(PuiseuxPoly::zero(Rationals).degree().is_err());
    }

    #[test]
    fn inflate_and_deflate() {
        let f = qpoly(&[("1/2", 1), ("1/3", 1)]);
        let g = f.inflate(&6.into()).unwrap();
        assert_eq!(g.to_string(), "X^3 + X^2");
        assert!(f.inflate(&4.into()).is_err());
        let back = PuiseuxPoly::deflate(&g, &6.into(), &MonoidSpec::QNonneg).unwrap();
        assert_eq!(back, f);
        // X^q + 2 at m = d(q)
        let h = qpoly(&[("5/7", 1), ("0", 2)]).inflate(&7.into()).unwrap();
        assert_eq!(h.to_string(), "X^5 + 2");
        assert_eq!(
            qpoly(&[("0", 9)]).inflate(&5.into()).unwrap().to_string(),
            "9"
        );

        let x_plus_1 = qpoly(&[("1", 1), ("0", 1)]).inflate(&1.into()).unwrap();
        let bi = MonoidSpec::bi_prime_divisible(3, 5).unwrap();
        assert_eq!(
            PuiseuxPoly::deflate(&x_plus_1, &3.into(), &bi).unwrap(),
            qpoly(&[("1/3", 1), ("0", 1)])
        );
        let naturals = MonoidSpec::finitely_generated(vec![q("1")]).unwrap();
        assert_eq!(
            PuiseuxPoly::deflate(&x_plus_1, &2.into(), &naturals),
            Err(Error::ExponentNotInMonoid(q("1/2")))
        );
    }

    #[test]
    fn content_examples() {
        let f = qpoly(&[("1/2", 6), ("1/3", 4), ("0", 2)]);
        assert_eq!(content(&f).unwrap(), 2.into());
        assert!(!is_primitive(&f).unwrap());
        let g = qpoly(&[("3/2", 1), ("1/2", 2), ("0", 2)]);
        assert_eq!(content(&g).unwrap(), 1.into());
        assert!(is_primitive(&g).unwrap());
        let a = qpoly(&[("1/2", 2), ("0", 2)]);
        let b = qpoly(&[("1/3", 3), ("0", 3)]);
        assert_eq!(content(&a.mul(&b).unwrap()).unwrap(), 6.into());
        assert!(content(&PuiseuxPoly::zero(Rationals)).is_err());
        let half = PuiseuxPoly::from_terms(
            Rationals,
            [
                (q("1"), BigRational::new(1.into(), 2.into())),
                (q("0"), r(3)),
            ],
        );
        assert!(content(&half).is_err());
        let (cleared, m) = clear_rational_coefficients(&half);
        assert_eq!(m, 2.into());
        assert_eq!(cleared, qpoly(&[("1", 1), ("0", 6)]));
    }

    #[test]
    fn eisenstein_examples() {
        assert!(eisenstein_applies(&qpoly(&[("3/2", 1), ("1/2", 2), ("0", 2)]), 2).unwrap());
        assert!(eisenstein_applies(&qpoly(&[("5/7", 1), ("0", 2)]), 2).unwrap());
        assert!(!eisenstein_applies(&qpoly(&[("1/2", 1), ("0", 1)]), 2).unwrap());
        assert!(!eisenstein_applies(&qpoly(&[("1/2", 1), ("0", 4)]), 2).unwrap());
        // no constant term
        assert!(!eisenstein_applies(&qpoly(&[("1", 1), ("1/2", 2)]), 2).unwrap());
        assert!(eisenstein_applies(&qpoly(&[("1/2", 1), ("0", 2)]), 4).is_err());
    }
}
