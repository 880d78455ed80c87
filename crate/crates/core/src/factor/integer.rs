//! Factorization over the integers (and hence over `Q`): squarefree
//! decomposition, factorization modulo a small prime, Hensel lifting past a
//! Mignotte bound, and exhaustive recombination of the lifted factors.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp::{factor_mod_p, ModPolynomial};
use super::DEFAULT_DEGREE_CAP;
use crate::dense::DensePoly;
use crate::error::{domain, Error, Result};
use crate::field::{CoefficientField, PrimeField, Rationals};
use crate::rational::primes_up_to;

/// Primes tried for the modular image.
const PRIME_POOL_BOUND: u64 = 2000;
/// Number of good primes whose factor degrees are intersected.
const SIEVE_PRIMES: usize = 5;
/// Recombination candidates examined before giving up.
const RECOMBINATION_LIMIT: u64 = 1 << 22;

/// Dense integer polynomial, coefficients in ascending degree, no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `self / divisor` when the division is exact over `Z`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    fn to_rational(&self) -> DensePoly<Rationals> {
        DensePoly::new(
            Rationals,
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Primitive integer polynomial proportional to a rational one.
    fn from_rational(f: &DensePoly<Rationals>) -> Self {
        let lcm = f
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = f
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        Self::new(ints).primitive_part()
    }

    pub fn reduce_mod(&self, field: PrimeField) -> ModPolynomial {
        DensePoly::new(
            field,
            self.coeffs.iter().map(|c| field.from_integer(c)).collect(),
        )
    }

    fn norm2_bound(&self) -> BigInt {
        let sum: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        sum.sqrt() + 1u32
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rational(), f)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rational(), f)
    }
}

/// `content * Π factor^multiplicity`, factors primitive, irreducible over `Q`
/// and with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerFactorization {
    pub content: BigInt,
    pub factors: Vec<(IntegerPolynomial, usize)>,
}

impl IntegerFactorization {
    pub fn expand(&self) -> IntegerPolynomial {
        self.factors.iter().fold(
            IntegerPolynomial::new(vec![self.content.clone()]),
            |acc, (g, m)| acc.mul(&g.pow(*m)),
        )
    }
}

/// Factors with the default degree cap.
pub fn factor_over_integers(f: &IntegerPolynomial) -> Result<IntegerFactorization> {
    factor_over_integers_with_cap(f, DEFAULT_DEGREE_CAP)
}

pub fn factor_over_integers_with_cap(
    f: &IntegerPolynomial,
    degree_cap: usize,
) -> Result<IntegerFactorization> {
    let Some(degree) = f.degree() else {
        return domain("cannot factor the zero polynomial");
    };
    let primitive = f.primitive_part();
    let content = f.leading().unwrap() / primitive.leading().unwrap();
    if degree > 0 && eisenstein_prime(&primitive).is_some() {
        // irreducible whatever the degree
        return Ok(IntegerFactorization {
            content,
            factors: vec![(primitive, 1)],
        });
    }
    if degree > degree_cap {
        return Err(Error::CapExceeded(format!(
            "degree {degree} exceeds the factorization cap {degree_cap}"
        )));
    }
    let mut factors: Vec<(IntegerPolynomial, usize)> = Vec::new();

    // powers of X
    let low = primitive.coeffs.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        factors.push((IntegerPolynomial::from_i64(&[0, 1]), low));
    }
    let rest = IntegerPolynomial::new(primitive.coeffs[low..].to_vec());

    for (part, mult) in squarefree_over_q(&rest) {
        for g in zassenhaus(&part)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
    });
    Ok(IntegerFactorization { content, factors })
}

/// Yun's algorithm over `Q`; returns primitive integer parts.
fn squarefree_over_q(f: &IntegerPolynomial) -> Vec<(IntegerPolynomial, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = f.to_rational();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    if a0.is_constant() {
        return vec![(IntegerPolynomial::from_rational(&f), 1)];
    }
    let mut b = f.exact_div(&a0).unwrap().expect("gcd divides");
    let c = df.exact_div(&a0).unwrap().expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.exact_div(&a).unwrap().expect("gcd divides");
        let c = d.exact_div(&a).unwrap().expect("gcd divides");
        d = c.sub(&b.derivative());
        if !a.is_constant() {
            out.push((IntegerPolynomial::from_rational(&a), i));
        }
        i += 1;
    }
    out
}

/// Small primes dividing `n`, by trial division over the prime pool.
fn small_prime_divisors(n: &BigInt) -> Vec<u64> {
    primes_up_to(PRIME_POOL_BOUND)
        .into_iter()
        .filter(|&p| (n % p).is_zero())
        .collect()
}

/// Eisenstein shortcut: a proof of irreducibility for primitive `f`.
fn eisenstein_prime(f: &IntegerPolynomial) -> Option<u64> {
    let (lead, lower) = f.coeffs.split_last()?;
    let g = lower.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return None;
    }
    small_prime_divisors(&g).into_iter().find(|&p| {
        let p_big = BigInt::from(p);
        !(lead % &p_big).is_zero() && !(&f.coeffs[0] % (&p_big * &p_big)).is_zero()
    })
}

/// Irreducible factors of a squarefree primitive polynomial with positive
/// leading coefficient and nonzero constant term.
fn zassenhaus(f: &IntegerPolynomial) -> Result<Vec<IntegerPolynomial>> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 || eisenstein_prime(f).is_some() {
        return Ok(vec![f.clone()]);
    }
    let lead = f.leading().unwrap().clone();

    // Factor modulo a few good primes; intersect the achievable factor degrees.
    let mut possible = vec![true; n + 1];
    let mut best: Option<(PrimeField, Vec<ModPolynomial>)> = None;
    let mut good = 0;
    for p in primes_up_to(PRIME_POOL_BOUND) {
        if (&lead % p).is_zero() {
            continue;
        }
        let field = PrimeField::new(p)?;
        let image = f.reduce_mod(field);
        if !image.gcd(&image.derivative()).is_constant() {
            continue;
        }
        let modular = factor_mod_p(&image)?;
        let locals: Vec<ModPolynomial> = modular.factors.into_iter().map(|(g, _)| g).collect();
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for g in &locals {
            let d = g.degree().unwrap();
            for s in (d..=n).rev() {
                sums[s] |= sums[s - d];
            }
        }
        for (slot, s) in possible.iter_mut().zip(&sums) {
            *slot &= *s;
        }
        if best.as_ref().is_none_or(|(_, b)| locals.len() < b.len()) {
            best = Some((field, locals));
        }
        good += 1;
        if good == SIEVE_PRIMES {
            break;
        }
    }
    let Some((field, locals)) = best else {
        return Err(Error::CapExceeded(format!(
            "no good prime below {PRIME_POOL_BOUND} for {f}"
        )));
    };
    if locals.len() == 1 || (1..n).all(|d| !possible[d]) {
        return Ok(vec![f.clone()]);
    }

    // candidates are lead * (product of lifted factors), in the symmetric range
    let bound = BigInt::from(mignotte_bound(f)) * 2u32;
    let p = BigInt::from(field.modulus());
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift(f, &locals, field, &modulus)?;
    recombine(f, lifted, &modulus, &possible)
}

// ---- arithmetic on Z/mZ[X], coefficients kept in [0, m) ----

fn reduce(c: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = c.iter().map(|x| x.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let sum: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    reduce(&sum, m)
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let neg: Vec<BigInt> = b.iter().map(|x| -x).collect();
    add_mod(a, &neg, m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let dh = h.len() - 1;
    let mut rem = reduce(a, m);
    if rem.len() <= dh {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dh];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dh].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, d) in h.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * d).mod_floor(m);
        }
        quot[k] = c;
    }
    rem.truncate(dh);
    (reduce(&quot, m), reduce(&rem, m))
}

fn lift_coeffs(g: &ModPolynomial) -> Vec<BigInt> {
    g.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// `(s, t)` with `s a + t b = 1` over `F_p`, `deg s < deg b`, `deg t < deg a`.
fn bezout(a: &ModPolynomial, b: &ModPolynomial) -> (ModPolynomial, ModPolynomial) {
    let field = *a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (DensePoly::one(field), DensePoly::zero(field));
    let (mut t0, mut t1) = (DensePoly::zero(field), DensePoly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        (r0, r1) = (r1, r);
        let s2 = s0.sub(&q.mul(&s1));
        (s0, s1) = (s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        (t0, t1) = (t1, t2);
    }
    let inv = field.inv(&r0.coeffs()[0]).expect("coprime factors");
    (s0.scale(&inv), t0.scale(&inv))
}

/// One quadratic Hensel step from `m` to `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = sub_mod(f, &mul_mod(g, h, m2), m2);
    let (q, r) = divrem_monic(&mul_mod(s, &e, m2), h, m2);
    let g2 = add_mod(
        &add_mod(g, &mul_mod(t, &e, m2), m2),
        &mul_mod(&q, g, m2),
        m2,
    );
    let h2 = add_mod(h, &r, m2);
    let one = [BigInt::one()];
    let b = sub_mod(
        &add_mod(&mul_mod(s, &g2, m2), &mul_mod(t, &h2, m2), m2),
        &one,
        m2,
    );
    let (c, d) = divrem_monic(&mul_mod(s, &b, m2), &h2, m2);
    let s2 = sub_mod(s, &d, m2);
    let t2 = sub_mod(
        &sub_mod(t, &mul_mod(t, &b, m2), m2),
        &mul_mod(&c, &g2, m2),
        m2,
    );
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f) Π locals (mod p)` to monic factors modulo `modulus`,
/// which must be `p^(2^j)`.
fn hensel_lift(
    f: &IntegerPolynomial,
    locals: &[ModPolynomial],
    field: PrimeField,
    modulus: &BigInt,
) -> Result<Vec<Vec<BigInt>>> {
    let target = reduce(&f.coeffs, modulus);
    let mut out = Vec::with_capacity(locals.len());
    lift_tree(&target, locals, field, modulus, &mut out)?;
    Ok(out)
}

fn lift_tree(
    f: &[BigInt],
    locals: &[ModPolynomial],
    field: PrimeField,
    modulus: &BigInt,
    out: &mut Vec<Vec<BigInt>>,
) -> Result<()> {
    if locals.len() == 1 {
        let lead = f.last().expect("nonzero");
        let inv = crate::rational::modular_inverse(lead, modulus)?;
        out.push(reduce(
            &f.iter().map(|c| c * &inv).collect::<Vec<_>>(),
            modulus,
        ));
        return Ok(());
    }
    let (left, right) = locals.split_at(locals.len() / 2);
    let lead = field.from_integer(f.last().expect("nonzero"));
    let g0 = left
        .iter()
        .fold(DensePoly::constant(field, lead), |acc, g| acc.mul(g));
    let h0 = right
        .iter()
        .fold(DensePoly::one(field), |acc, g| acc.mul(g));
    let (s0, t0) = bezout(&g0, &h0);
    let p = BigInt::from(field.modulus());
    let (mut g, mut h) = (lift_coeffs(&g0), lift_coeffs(&h0));
    let (mut s, mut t) = (lift_coeffs(&s0), lift_coeffs(&t0));
    let mut m = p;
    while &m < modulus {
        m = &m * &m;
        let fm = reduce(f, &m);
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m);
    }
    debug_assert_eq!(&m, modulus);
    lift_tree(&g, left, field, modulus, out)?;
    lift_tree(&h, right, field, modulus, out)
}

fn symmetric(c: &[BigInt], m: &BigInt) -> IntegerPolynomial {
    let half = m >> 1u32;
    IntegerPolynomial::new(
        c.iter()
            .map(|x| {
                let x = x.mod_floor(m);
                if x > half {
                    x - m
                } else {
                    x
                }
            })
            .collect(),
    )
}

/// Tries subsets of lifted factors in order of size; every true factor of `f`
/// shows up as some subset because the modulus exceeds twice the bound.
fn recombine(
    f: &IntegerPolynomial,
    lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
    possible_degrees: &[bool],
) -> Result<Vec<IntegerPolynomial>> {
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut examined: u64 = 0;
    let bound = BigInt::from(mignotte_bound(f));
    let mut size = 1;
    'sizes: while 2 * size <= remaining.len() {
        let r = remaining.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let degree: usize = subset.iter().map(|&i| remaining[i].len() - 1).sum();
            if possible_degrees[degree] {
                examined += 1;
                if examined > RECOMBINATION_LIMIT {
                    return Err(Error::CapExceeded(format!(
                        "recombination of {r} modular factors"
                    )));
                }
                let lead = current.leading().unwrap();
                if !plausible(
                    lead,
                    &current.coeffs[0],
                    &subset,
                    &remaining,
                    modulus,
                    &bound,
                ) {
                    if !next_subset(&mut subset, r) {
                        break;
                    }
                    continue;
                }
                let mut product = vec![lead.mod_floor(modulus)];
                for &i in &subset {
                    product = mul_mod(&product, &remaining[i], modulus);
                }
                let candidate = symmetric(&product, modulus).primitive_part();
                let constant_ok = candidate
                    .coeffs
                    .first()
                    .is_some_and(|c| !c.is_zero() && (&current.coeffs[0] % c).is_zero());
                if constant_ok {
                    if let Some(quotient) = current.exact_div(&candidate) {
                        found.push(candidate);
                        current = quotient;
                        remaining = remaining
                            .into_iter()
                            .enumerate()
                            .filter(|(i, _)| !subset.contains(i))
                            .map(|(_, g)| g)
                            .collect();
                        continue 'sizes;
                    }
                }
            }
            if !next_subset(&mut subset, r) {
                break;
            }
        }
        size += 1;
    }
    if current.degree().unwrap_or(0) > 0 {
        found.push(current.primitive_part());
    }
    Ok(found)
}

/// Necessary conditions on the candidate `lead * Π subset` that avoid the full
/// product: its constant term divides `lead * constant`, and its second
/// highest coefficient is within the coefficient bound.
fn plausible(
    lead: &BigInt,
    constant: &BigInt,
    subset: &[usize],
    factors: &[Vec<BigInt>],
    modulus: &BigInt,
    bound: &BigInt,
) -> bool {
    let half = modulus >> 1u32;
    let symmetric = |x: BigInt| {
        let x = x.mod_floor(modulus);
        if x > half {
            x - modulus
        } else {
            x
        }
    };
    let mut c = lead.mod_floor(modulus);
    // top two coefficients (a, b) of the running product
    let (mut a, mut b) = (lead.mod_floor(modulus), BigInt::zero());
    for &i in subset {
        let g = &factors[i];
        let d = g.len() - 1;
        c = (c * &g[0]).mod_floor(modulus);
        let next_b = (&a * &g[d - 1] + &b * &g[d]).mod_floor(modulus);
        a = (a * &g[d]).mod_floor(modulus);
        b = next_b;
    }
    let c = symmetric(c);
    !c.is_zero() && (lead * constant % c).is_zero() && symmetric(b).abs() <= *bound
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Converts a rational polynomial; returns the primitive integer polynomial
/// and the rational `u` with `f = u * g`.
pub(crate) fn integer_image(f: &DensePoly<Rationals>) -> (IntegerPolynomial, BigRational) {
    let g = IntegerPolynomial::from_rational(f);
    let unit = match (f.leading(), g.leading()) {
        (Some(a), Some(b)) => a / BigRational::from_integer(b.clone()),
        _ => BigRational::zero(),
    };
    (g, unit)
}

pub(crate) fn to_rational_poly(g: &IntegerPolynomial) -> DensePoly<Rationals> {
    g.to_rational()
}

/// `|lc(f)| 2^n (|f|_2 + 1)`, bounding the coefficients of `lc(f)/lc(g) * g`
/// for every factor `g` of `f`.
pub fn mignotte_bound(f: &IntegerPolynomial) -> BigUint {
    let n = f.degree().unwrap_or(0);
    let lead = f.leading().map(|c| c.abs()).unwrap_or_default();
    ((BigInt::one() << n) * f.norm2_bound() * lead)
        .to_biguint()
        .unwrap_or_default()
}
