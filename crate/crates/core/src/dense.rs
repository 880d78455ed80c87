//! Dense univariate polynomials over a coefficient field.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{domain, Result};
use crate::field::CoefficientField;

/// `coeffs[i]` is the coefficient of `X^i`; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly<F: CoefficientField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: CoefficientField> DensePoly<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        let mut poly = DensePoly { field, coeffs };
        poly.trim();
        poly
    }

    pub fn zero(field: F) -> Self {
        DensePoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::constant(field, one)
    }

    /// `c * X^k`.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// The polynomial `X`.
    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading().and_then(|c| self.field.inv(c)) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let Some(dd) = divisor.degree() else {
            return domain("polynomial division by zero");
        };
        let lead_inv = f.inv(divisor.leading().unwrap()).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Quotient when `divisor` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_integer(&i.into())))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one(self.field.clone()).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }
}

impl<F: CoefficientField> fmt::Debug for DensePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: CoefficientField> fmt::Display for DensePoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let field = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            if first {
                if negative {
                    out.write_str("-")?;
                }
            } else {
                out.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let coeff = field.format_elem(&abs);
            match (i, field.is_one(&abs)) {
                (0, _) => out.write_str(&coeff)?,
                (_, true) => {}
                _ => write!(out, "{coeff}*")?,
            }
            match i {
                0 => {}
                1 => out.write_str("X")?,
                _ => write!(out, "X^{i}")?,
            }
        }
        Ok(())
    }
}
