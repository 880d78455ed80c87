//! Nonnegative reduced rationals, p-adic valuations and small number theory.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// A nonnegative rational number in lowest terms.
///
/// The numerator `n(q)` and denominator `d(q)` are coprime, the denominator is
/// positive and zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedRational(BigRational);

impl ReducedRational {
    /// Builds `num/den` in lowest terms. Fails on a zero denominator or a
    /// negative value.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return domain("zero denominator");
        }
        Self::from_big_rational(BigRational::new(num, den))
    }

    pub fn from_big_rational(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return domain(format!("negative rational {value} is outside Q>=0"));
        }
        Ok(ReducedRational(value))
    }

    pub fn zero() -> Self {
        ReducedRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ReducedRational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(n, 1)
    }

    /// `1/d`.
    pub fn reciprocal_of(d: impl Into<BigInt>) -> Result<Self> {
        Self::new(1, d)
    }

    /// The numerator `n(q)`.
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// The denominator `d(q)`.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }

    /// `self - other`, or `None` when the difference would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if other > self {
            None
        } else {
            Some(ReducedRational(&self.0 - &other.0))
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Result<Self> {
        Self::from_big_rational(&self.0 * BigRational::from_integer(k.clone()))
    }

    pub fn div_int(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return domain("division by zero");
        }
        Self::from_big_rational(&self.0 / BigRational::from_integer(k.clone()))
    }

    /// Integer value of `self * m`, if it is an integer.
    pub fn scaled_integer(&self, m: &BigInt) -> Option<BigInt> {
        let scaled = &self.0 * BigRational::from_integer(m.clone());
        scaled.is_integer().then(|| scaled.to_integer())
    }
}

impl std::ops::Add for &ReducedRational {
    type Output = ReducedRational;
    fn add(self, rhs: &ReducedRational) -> ReducedRational {
        ReducedRational(&self.0 + &rhs.0)
    }
}

impl std::ops::Mul for &ReducedRational {
    type Output = ReducedRational;
    fn mul(self, rhs: &ReducedRational) -> ReducedRational {
        ReducedRational(&self.0 * &rhs.0)
    }
}

impl fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ReducedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the literal forms `a/b` and `a` (ASCII digits, no whitespace).
impl FromStr for ReducedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn digits(part: &str, whole: &str) -> Result<BigInt> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return domain(format!("malformed rational literal {whole:?}"));
            }
            Ok(part.parse::<BigInt>().expect("ascii digits"))
        }
        match s.split_once('/') {
            Some((n, d)) => ReducedRational::new(digits(n, s)?, digits(d, s)?),
            None => ReducedRational::from_integer(digits(s, s)?),
        }
    }
}

/// `reduce(num, den)`: the reduced form of `num/den`.
pub fn reduce(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<ReducedRational> {
    ReducedRational::new(num, den)
}

/// A p-adic valuation: an integer, or `+∞` for the input zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Exponent of `p` in the nonzero integer `n`.
pub fn integer_valuation(p: u64, n: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q) = v_p(n(q)) - v_p(d(q))`, with `v_p(0) = +∞`.
pub fn padic_valuation(p: u64, q: &ReducedRational) -> Result<Valuation> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if q.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let num = integer_valuation(p, q.numer()) as i64;
    let den = integer_valuation(p, q.denom()) as i64;
    Ok(Valuation::Finite(num - den))
}

/// Least common multiple of the denominators; `1` for the empty set.
pub fn denominator_lcm<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a ReducedRational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// The inverse of `a` modulo `m`, in `[0, m)`.
pub fn modular_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return domain("modulus must be positive");
    }
    let ext = a.mod_floor(m).extended_gcd(m);
    if !ext.gcd.is_one() {
        return domain(format!("{a} is not invertible modulo {m}"));
    }
    Ok(ext.x.mod_floor(m))
}

/// All primes `<= bound` in increasing order (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of a positive integer as `(prime, exponent)` pairs in
/// increasing order. Integers above `u64::MAX` hit a cap.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.sign() != Sign::Plus {
        return domain("factor_integer expects a positive integer");
    }
    let n = n
        .to_u64()
        .ok_or_else(|| Error::CapExceeded(format!("cannot factor {n}: exceeds 64 bits")))?;
    let mut n = n;
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    factor_u64_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ReducedRational {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(4, 6).unwrap(), q("2/3"));
        let zero = reduce(0, 5).unwrap();
        assert_eq!(
            (zero.numer().clone(), zero.denom().clone()),
            (0.into(), 1.into())
        );
        assert_eq!(reduce(13, 6).unwrap().to_string(), "13/6");
        assert!(matches!(reduce(1, 0), Err(Error::Domain(_))));
        assert!(reduce(-1, 2).is_err());
    }

    #[test]
    fn literal_format() {
        assert_eq!(q("6/3").to_string(), "2");
        assert_eq!(q("0").to_string(), "0");
        for bad in ["", "1/", "/2", " 1/2", "1 /2", "-1/2", "1/0", "a"] {
            assert!(bad.parse::<ReducedRational>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            padic_valuation(2, &q("13/6")).unwrap(),
            Valuation::Finite(-1)
        );
        assert_eq!(
            padic_valuation(5, &q("13/6")).unwrap(),
            Valuation::Finite(0)
        );
        assert_eq!(padic_valuation(3, &q("0")).unwrap(), Valuation::Infinity);
        assert_eq!(
            padic_valuation(3, &q("18/5")).unwrap(),
            Valuation::Finite(2)
        );
        assert!(padic_valuation(4, &q("1/2")).is_err());
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(denominator_lcm(&[q("1/2"), q("1/3")]), 6.into());
        assert_eq!(denominator_lcm(&[]), 1.into());
        // lcm(4, 6, 1)
        assert_eq!(denominator_lcm(&[q("3/4"), q("5/6"), q("2")]), 12.into());
    }

    #[test]
    fn inverse_examples() {
        let inv = |a: i64, m: i64| modular_inverse(&a.into(), &m.into()).unwrap();
        assert_eq!(inv(3, 5), 2.into());
        assert_eq!(inv(1, 7), 1.into());
        // 10 * 12 = 120 = 7 * 17 + 1
        assert_eq!(inv(10, 17), 12.into());
        assert_eq!(inv(-3, 5), 3.into());
        assert!(modular_inverse(&6.into(), &9.into()).is_err());
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(2), vec![2]);
        let thirty = primes_up_to(30);
        assert_eq!(thirty.len(), 10);
        assert_eq!(*thirty.last().unwrap(), 29);
        let trial: Vec<u64> = (2..=500u64)
            .filter(|n| (2..*n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes_up_to(500), trial);
        assert!(trial.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn factorization() {
        assert_eq!(
            factor_integer(&360.into()).unwrap(),
            vec![(2, 3), (3, 2), (5, 1)]
        );
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        assert_eq!(
            factor_integer(&big).unwrap(),
            vec![(998_244_353, 1), (1_000_000_007, 1)]
        );
        assert_eq!(factor_integer(&1.into()).unwrap(), vec![]);
    }
}
