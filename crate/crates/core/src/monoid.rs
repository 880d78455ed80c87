//! Puiseux monoids: additive submonoids of the nonnegative rationals.
//!
//! A [`MonoidSpec`] names one of a handful of families, each of which has an
//! exact membership test. Everything else (atoms, divisibility, factorization
//! sets, root-closure, atomicity) is decided per family on top of membership.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{
    denominator_lcm, factor_integer, integer_valuation, is_prime, modular_inverse, primes_up_to,
    ReducedRational,
};

/// Largest integer target decided by dynamic programming.
const DP_LIMIT: usize = 20_000_000;
/// Largest number of factorizations enumerated before giving up.
const FACTORIZATION_LIMIT: usize = 1_000_000;

/// A generator `numerator/prime` of a prime reciprocal monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReciprocalPair {
    pub numerator: BigInt,
    pub prime: u64,
}

impl ReciprocalPair {
    pub fn generator(&self) -> ReducedRational {
        ReducedRational::new(self.numerator.clone(), self.prime).expect("positive pair")
    }
}

/// Description of a Puiseux monoid.
///
/// Build values through the validating constructors; the enum is public so
/// callers can match on the family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonoidSpec {
    /// `<g_1, ..., g_k>`; generators sorted ascending without duplicates. No
    /// generators means the trivial monoid `{0}`.
    FinitelyGenerated { generators: Vec<ReducedRational> },
    /// `<a_i/p_i>` for the listed pairs; with `tail`, also `1/p` for every
    /// prime `p` not listed.
    PrimeReciprocal {
        pairs: Vec<ReciprocalPair>,
        tail: bool,
    },
    /// All of `Q>=0`.
    QNonneg,
    /// `<1/p^n : n >= 1>`.
    PrimePowerReciprocal { p: u64 },
    /// `<1/(p^i q^j) : i, j >= 1>`.
    BiPrimeDivisible { p: u64, q: u64 },
    /// `<1/p^n, 1/q^n : n >= 1>`.
    PrimePowerPair { p: u64, q: u64 },
}

impl MonoidSpec {
    pub fn finitely_generated(generators: Vec<ReducedRational>) -> Result<Self> {
        let mut generators = generators;
        if generators.iter().any(ReducedRational::is_zero) {
            return domain("generators of a finitely generated monoid must be positive");
        }
        generators.sort();
        generators.dedup();
        Ok(MonoidSpec::FinitelyGenerated { generators })
    }

    pub fn prime_reciprocal(pairs: Vec<(BigInt, u64)>, tail: bool) -> Result<Self> {
        let mut out: Vec<ReciprocalPair> = Vec::with_capacity(pairs.len());
        for (numerator, prime) in pairs {
            if !is_prime(prime) {
                return domain(format!("{prime} is not prime"));
            }
            if !numerator.is_positive() {
                return domain(format!("numerator {numerator} must be positive"));
            }
            if (&numerator % prime).is_zero() {
                return domain(format!("{prime} divides the numerator {numerator}"));
            }
            if out.iter().any(|pair| pair.prime == prime) {
                return domain(format!("prime {prime} is listed twice"));
            }
            out.push(ReciprocalPair { numerator, prime });
        }
        out.sort_by_key(|pair| pair.prime);
        Ok(MonoidSpec::PrimeReciprocal { pairs: out, tail })
    }

    pub fn prime_power_reciprocal(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(MonoidSpec::PrimePowerReciprocal { p })
    }

    pub fn bi_prime_divisible(p: u64, q: u64) -> Result<Self> {
        check_prime_pair(p, q)?;
        Ok(MonoidSpec::BiPrimeDivisible { p, q })
    }

    pub fn prime_power_pair(p: u64, q: u64) -> Result<Self> {
        check_prime_pair(p, q)?;
        Ok(MonoidSpec::PrimePowerPair { p, q })
    }

    /// Re-checks the family invariants (useful for hand-built values).
    pub fn validate(&self) -> Result<()> {
        match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                let rebuilt = MonoidSpec::finitely_generated(generators.clone())?;
                if &rebuilt != self {
                    return domain("generators must be sorted and distinct");
                }
                Ok(())
            }
            MonoidSpec::PrimeReciprocal { pairs, tail } => {
                let raw = pairs
                    .iter()
                    .map(|pair| (pair.numerator.clone(), pair.prime))
                    .collect();
                MonoidSpec::prime_reciprocal(raw, *tail).map(|_| ())
            }
            MonoidSpec::QNonneg => Ok(()),
            MonoidSpec::PrimePowerReciprocal { p } => check_prime(*p),
            MonoidSpec::BiPrimeDivisible { p, q } | MonoidSpec::PrimePowerPair { p, q } => {
                check_prime_pair(*p, *q)
            }
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            MonoidSpec::FinitelyGenerated { .. } => "finitely-generated",
            MonoidSpec::PrimeReciprocal { .. } => "prime-reciprocal",
            MonoidSpec::QNonneg => "q-nonneg",
            MonoidSpec::PrimePowerReciprocal { .. } => "prime-power-reciprocal",
            MonoidSpec::BiPrimeDivisible { .. } => "bi-prime-divisible",
            MonoidSpec::PrimePowerPair { .. } => "prime-power-pair",
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            MonoidSpec::FinitelyGenerated { generators } => generators.is_empty(),
            MonoidSpec::PrimeReciprocal { pairs, tail } => pairs.is_empty() && !tail,
            _ => false,
        }
    }

    fn require_nontrivial(&self) -> Result<()> {
        if self.is_trivial() {
            Err(Error::TrivialMonoid)
        } else {
            Ok(())
        }
    }

    /// Membership test `x ∈ M`.
    pub fn contains(&self, x: &ReducedRational) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        match self {
            MonoidSpec::FinitelyGenerated { generators } => fg_contains(generators, x),
            MonoidSpec::PrimeReciprocal { pairs, tail } => {
                let Some(form) = reciprocal_normal_form(pairs, *tail, x)? else {
                    return Ok(false);
                };
                remainder_admissible(pairs, *tail, &form.integer_part)
            }
            MonoidSpec::QNonneg => Ok(true),
            MonoidSpec::PrimePowerReciprocal { p } => Ok(strip_primes(x.denom(), &[*p]).is_one()),
            MonoidSpec::BiPrimeDivisible { p, q } => {
                Ok(strip_primes(x.denom(), &[*p, *q]).is_one())
            }
            MonoidSpec::PrimePowerPair { p, q } => Ok(power_pair_normal_form(*p, *q, x)
                .is_some_and(|form| !form.integer_part.is_negative())),
        }
    }

    /// The unique normal form `n + Σ α_i g_i` of an element of a prime
    /// reciprocal or prime-power-pair monoid.
    pub fn decompose(&self, x: &ReducedRational) -> Result<Decomposition> {
        let form = match self {
            MonoidSpec::PrimeReciprocal { pairs, tail } => {
                match reciprocal_normal_form(pairs, *tail, x)? {
                    Some(form) if remainder_admissible(pairs, *tail, &form.integer_part)? => form,
                    _ => return Err(Error::NotMember(x.clone())),
                }
            }
            MonoidSpec::PrimePowerPair { p, q } => match power_pair_normal_form(*p, *q, x) {
                Some(form) if !form.integer_part.is_negative() => form,
                _ => return Err(Error::NotMember(x.clone())),
            },
            other => return Err(Error::UnsupportedFamily(other.family_name())),
        };
        debug_assert_eq!(&form.reconstruct(), x);
        Ok(form)
    }

    /// The atoms of the monoid.
    pub fn atoms(&self) -> Result<Atoms> {
        Ok(match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                Atoms::Finite(minimal_generators(generators)?)
            }
            MonoidSpec::PrimeReciprocal { pairs, tail } => {
                let listed = pairs.iter().map(ReciprocalPair::generator).collect();
                if *tail {
                    Atoms::FiniteWithTail(listed)
                } else {
                    Atoms::Finite(listed)
                }
            }
            _ => Atoms::Antimatter,
        })
    }

    /// Whether `q` is an atom of the monoid.
    pub fn is_atom(&self, q: &ReducedRational) -> Result<bool> {
        if q.is_zero() {
            return Ok(false);
        }
        match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                Ok(minimal_generators(generators)?.contains(q))
            }
            MonoidSpec::PrimeReciprocal { pairs, tail } => {
                if pairs.iter().any(|pair| &pair.generator() == q) {
                    return Ok(true);
                }
                Ok(*tail
                    && q.numer().is_one()
                    && q.denom()
                        .to_u64()
                        .is_some_and(|d| is_prime(d) && pairs.iter().all(|pair| pair.prime != d)))
            }
            _ => Ok(false),
        }
    }

    /// `y |_M z`: there is `x ∈ M` with `z = x + y`.
    pub fn divides(&self, y: &ReducedRational, z: &ReducedRational) -> Result<bool> {
        for v in [y, z] {
            if !self.contains(v)? {
                return domain(format!("{v} is not in the monoid"));
            }
        }
        match z.checked_sub(y) {
            Some(diff) => self.contains(&diff),
            None => Ok(false),
        }
    }

    /// Replaces the tail of a prime reciprocal monoid by explicit pairs `1/p`
    /// for the unlisted primes `p <= prime_bound`. Other families are returned
    /// unchanged.
    pub fn truncated(&self, prime_bound: u64) -> MonoidSpec {
        match self {
            MonoidSpec::PrimeReciprocal { pairs, tail: true } => {
                let mut pairs = pairs.clone();
                for p in primes_up_to(prime_bound) {
                    if pairs.iter().all(|pair| pair.prime != p) {
                        pairs.push(ReciprocalPair {
                            numerator: BigInt::one(),
                            prime: p,
                        });
                    }
                }
                pairs.sort_by_key(|pair| pair.prime);
                MonoidSpec::PrimeReciprocal { pairs, tail: false }
            }
            other => other.clone(),
        }
    }

    /// The set `Z(x)` of factorizations of `x` and its set of lengths `L(x)`.
    ///
    /// Needs a finite atom set: finitely generated monoids and prime
    /// reciprocal monoids without a tail (see [`MonoidSpec::truncated`]).
    pub fn factorizations(&self, x: &ReducedRational) -> Result<FactorizationSet> {
        let atoms = match self.atoms()? {
            Atoms::Finite(atoms) => atoms,
            Atoms::FiniteWithTail(_) => return Err(Error::UnsupportedFamily(self.family_name())),
            Atoms::Antimatter => return Err(Error::NoAtoms),
        };
        if !self.contains(x)? {
            return Err(Error::NotMember(x.clone()));
        }
        let counts = enumerate_factorizations(&atoms, x)?;
        let factorizations: Vec<Factorization> = counts
            .into_iter()
            .map(|count| Factorization {
                parts: atoms
                    .iter()
                    .zip(count)
                    .filter(|(_, c)| *c > 0)
                    .map(|(a, c)| (a.clone(), c))
                    .collect(),
            })
            .collect();
        let lengths = factorizations.iter().map(Factorization::length).collect();
        Ok(FactorizationSet {
            element: x.clone(),
            factorizations,
            lengths,
        })
    }

    /// Root-closed: equal to the set of `x ∈ gp(M)` with `nx ∈ M` for some `n >= 1`.
    pub fn is_root_closed(&self) -> Result<bool> {
        Ok(match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                minimal_generators(generators)?.len() <= 1
            }
            MonoidSpec::PrimeReciprocal { pairs, tail } => !tail && pairs.len() <= 1,
            MonoidSpec::QNonneg
            | MonoidSpec::PrimePowerReciprocal { .. }
            | MonoidSpec::BiPrimeDivisible { .. } => true,
            MonoidSpec::PrimePowerPair { .. } => false,
        })
    }

    /// Generator `d` of the root closure `<d>` of a nontrivial finitely
    /// generated monoid.
    pub fn root_closure_fg(&self) -> Result<ReducedRational> {
        match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                self.require_nontrivial()?;
                cyclic_group_generator(generators)
            }
            other => Err(Error::UnsupportedFamily(other.family_name())),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            MonoidSpec::FinitelyGenerated { .. } | MonoidSpec::PrimeReciprocal { .. }
        )
    }

    pub fn is_antimatter(&self) -> bool {
        !self.is_atomic() || self.is_trivial()
    }

    /// Whether `0` is a limit point of `M`.
    pub fn has_zero_limit_point(&self) -> bool {
        match self {
            MonoidSpec::FinitelyGenerated { .. } => false,
            MonoidSpec::PrimeReciprocal { tail, .. } => *tail,
            _ => true,
        }
    }

    /// A description of the difference group `gp(M)`.
    pub fn difference_group_generator(&self) -> Result<DifferenceGroup> {
        self.require_nontrivial()?;
        Ok(match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                DifferenceGroup::Cyclic(cyclic_group_generator(generators)?)
            }
            MonoidSpec::PrimeReciprocal { pairs, tail: false } => {
                let gens: Vec<_> = pairs.iter().map(ReciprocalPair::generator).collect();
                DifferenceGroup::Cyclic(cyclic_group_generator(&gens)?)
            }
            MonoidSpec::PrimeReciprocal { tail: true, .. } => {
                DifferenceGroup::SquarefreeDenominators
            }
            MonoidSpec::QNonneg => DifferenceGroup::AllRationals,
            MonoidSpec::PrimePowerReciprocal { p } => DifferenceGroup::DensePrime(*p),
            MonoidSpec::BiPrimeDivisible { p, q } | MonoidSpec::PrimePowerPair { p, q } => {
                DifferenceGroup::DenseBiPrime(*p, *q)
            }
        })
    }

    /// Checks that `q_1 + M ⊊ q_2 + M ⊊ ...`, i.e. every step strictly divides.
    pub fn verify_divisibility_chain(&self, chain: &[ReducedRational]) -> Result<ChainReport> {
        for q in chain {
            if !self.contains(q)? {
                return domain(format!("chain element {q} is not in the monoid"));
            }
        }
        for (i, pair) in chain.windows(2).enumerate() {
            let strict = match pair[0].checked_sub(&pair[1]) {
                Some(diff) if !diff.is_zero() => self.contains(&diff)?,
                _ => false,
            };
            if !strict {
                return Ok(ChainReport {
                    strict: false,
                    first_violation: Some(i + 1),
                });
            }
        }
        Ok(ChainReport {
            strict: true,
            first_violation: None,
        })
    }

    /// Primes `<= bound` dividing the denominator of some element of `M`.
    pub fn denominator_prime_set(&self, bound: u64) -> BTreeSet<u64> {
        let primes = primes_up_to(bound);
        match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                let lcm = denominator_lcm(generators);
                primes
                    .into_iter()
                    .filter(|&p| (&lcm % p).is_zero())
                    .collect()
            }
            MonoidSpec::PrimeReciprocal { pairs, tail } => primes
                .into_iter()
                .filter(|&p| *tail || pairs.iter().any(|pair| pair.prime == p))
                .collect(),
            MonoidSpec::QNonneg => primes.into_iter().collect(),
            MonoidSpec::PrimePowerReciprocal { p } => {
                primes.into_iter().filter(|r| r == p).collect()
            }
            MonoidSpec::BiPrimeDivisible { p, q } | MonoidSpec::PrimePowerPair { p, q } => {
                primes.into_iter().filter(|r| r == p || r == q).collect()
            }
        }
    }

    /// `M ≅ (N_0, +)`, equivalently `F[M]` is half-factorial, or a PID.
    pub fn is_isomorphic_to_naturals(&self) -> Result<bool> {
        self.require_nontrivial()?;
        Ok(match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                minimal_generators(generators)?.len() == 1
            }
            MonoidSpec::PrimeReciprocal { pairs, tail } => !tail && pairs.len() == 1,
            _ => false,
        })
    }

    /// `x/p ∈ M` for every `x ∈ M`.
    pub fn is_p_divisible(&self, p: u64) -> bool {
        match self {
            MonoidSpec::QNonneg => true,
            MonoidSpec::PrimePowerReciprocal { p: r } => *r == p,
            MonoidSpec::BiPrimeDivisible { p: r, q: s } => *r == p || *s == p,
            _ => self.is_trivial(),
        }
    }
}

impl fmt::Display for MonoidSpec {
    /// Prints the spec in the text grammar accepted by the command line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidSpec::FinitelyGenerated { generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "fg: {}", gens.join(", "))
            }
            MonoidSpec::PrimeReciprocal { pairs, tail } => {
                let gens: Vec<String> = pairs
                    .iter()
                    .map(|pair| format!("{}/{}", pair.numerator, pair.prime))
                    .collect();
                write!(f, "pr: {}", gens.join(", "))?;
                if *tail {
                    f.write_str("; tail")?;
                }
                Ok(())
            }
            MonoidSpec::QNonneg => f.write_str("qplus"),
            MonoidSpec::PrimePowerReciprocal { p } => write!(f, "ppr: {p}"),
            MonoidSpec::BiPrimeDivisible { p, q } => write!(f, "biprime: {p}, {q}"),
            MonoidSpec::PrimePowerPair { p, q } => write!(f, "powers: {p}, {q}"),
        }
    }
}

/// Result of [`MonoidSpec::atoms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atoms {
    Finite(Vec<ReducedRational>),
    /// The listed atoms together with `1/p` for every unlisted prime `p`.
    FiniteWithTail(Vec<ReducedRational>),
    Antimatter,
}

/// Symbolic description of a difference group `gp(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DifferenceGroup {
    /// `dZ`.
    Cyclic(ReducedRational),
    /// `{n / p^r : n ∈ Z, r >= 0}`.
    DensePrime(u64),
    /// `{n / (p^r q^s) : n ∈ Z, r, s >= 0}`.
    DenseBiPrime(u64, u64),
    /// Rationals with squarefree denominator.
    SquarefreeDenominators,
    AllRationals,
}

impl fmt::Display for DifferenceGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DifferenceGroup::Cyclic(d) => write!(f, "cyclic({d})"),
            DifferenceGroup::DensePrime(p) => write!(f, "dense-prime({p})"),
            DifferenceGroup::DenseBiPrime(p, q) => write!(f, "dense-biprime({p},{q})"),
            DifferenceGroup::SquarefreeDenominators => f.write_str("squarefree-denominators"),
            DifferenceGroup::AllRationals => f.write_str("all-rationals"),
        }
    }
}

/// Normal form `n + Σ α_i g_i` with every digit `α_i` below its prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub integer_part: BigInt,
    /// Nonzero digits keyed by generator (`a_i/p_i` or `1/p^i`).
    pub digits: BTreeMap<ReducedRational, u64>,
}

impl Decomposition {
    pub fn reconstruct(&self) -> ReducedRational {
        let mut total = self.integer_part.clone().into();
        for (g, &alpha) in &self.digits {
            total += g.as_big_rational() * num_rational::BigRational::from_integer(alpha.into());
        }
        ReducedRational::from_big_rational(total).expect("normal forms are nonnegative")
    }
}

/// One factorization: a multiset of atoms as `(atom, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub parts: Vec<(ReducedRational, u64)>,
}

impl Factorization {
    pub fn length(&self) -> u64 {
        self.parts.iter().map(|(_, c)| c).sum()
    }

    pub fn value(&self) -> ReducedRational {
        let mut total = ReducedRational::zero();
        for (a, c) in &self.parts {
            total = &total + &a.mul_int(&BigInt::from(*c)).expect("nonnegative");
        }
        total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationSet {
    pub element: ReducedRational,
    pub factorizations: Vec<Factorization>,
    pub lengths: BTreeSet<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub strict: bool,
    /// 1-based index of the first step `q_i -> q_{i+1}` that is not a strict
    /// divisibility.
    pub first_violation: Option<usize>,
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        domain(format!("{p} is not prime"))
    }
}

fn check_prime_pair(p: u64, q: u64) -> Result<()> {
    check_prime(p)?;
    check_prime(q)?;
    if p == q {
        return domain(format!("primes must be distinct, got {p} twice"));
    }
    Ok(())
}

/// Divides out every power of the given primes.
fn strip_primes(n: &BigInt, primes: &[u64]) -> BigInt {
    let mut n = n.clone();
    for &p in primes {
        let p = BigInt::from(p);
        while (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n
}

/// Membership of `target` in the numerical monoid generated by positive
/// integers `gens`.
pub(crate) fn numerical_contains(gens: &[BigInt], target: &BigInt) -> Result<bool> {
    if target.is_zero() {
        return Ok(true);
    }
    if gens.is_empty() || target.is_negative() {
        return Ok(false);
    }
    let g = gens.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !(target % &g).is_zero() {
        return Ok(false);
    }
    let target = target / &g;
    let gens: Vec<BigInt> = gens.iter().map(|x| x / &g).collect();
    let min = gens.iter().min().unwrap();
    let max = gens.iter().max().unwrap();
    if min.is_one() {
        return Ok(true);
    }
    // Frobenius number < (min - 1)(max - 1).
    if target >= (min - 1u32) * (max - 1u32) {
        return Ok(true);
    }
    let t = target
        .to_usize()
        .filter(|&t| t <= DP_LIMIT)
        .ok_or_else(|| Error::CapExceeded(format!("membership target {target} too large")))?;
    let small: Vec<usize> = gens
        .iter()
        .filter_map(|x| x.to_usize())
        .filter(|&x| x <= t)
        .collect();
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for v in 1..=t {
        reach[v] = small.iter().any(|&a| a <= v && reach[v - a]);
    }
    Ok(reach[t])
}

fn fg_contains(generators: &[ReducedRational], x: &ReducedRational) -> Result<bool> {
    let lcm = denominator_lcm(generators);
    let Some(target) = x.scaled_integer(&lcm) else {
        return Ok(false);
    };
    let gens: Vec<BigInt> = generators
        .iter()
        .map(|g| g.scaled_integer(&lcm).expect("lcm clears denominators"))
        .collect();
    numerical_contains(&gens, &target)
}

/// Minimal generating set: drop every generator that is a sum of smaller ones.
fn minimal_generators(generators: &[ReducedRational]) -> Result<Vec<ReducedRational>> {
    let mut kept: Vec<ReducedRational> = Vec::new();
    for g in generators {
        if kept.is_empty() || !fg_contains(&kept, g)? {
            kept.push(g.clone());
        }
    }
    Ok(kept)
}

/// `d` with `<g_1, ..., g_k>` generating the group `dZ`: `gcd(L g_i) / L`.
fn cyclic_group_generator(generators: &[ReducedRational]) -> Result<ReducedRational> {
    if generators.is_empty() {
        return Err(Error::TrivialMonoid);
    }
    let lcm = denominator_lcm(generators);
    let g = generators
        .iter()
        .map(|x| x.scaled_integer(&lcm).expect("lcm clears denominators"))
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    ReducedRational::new(g, lcm)
}

/// The digit block `c ∈ [0, m)` with `x - c/m` free of the primes of `m`,
/// where `m` is the full prime-power part of `d(x)` for one prime.
fn digit_block(x: &ReducedRational, m: &BigInt) -> BigInt {
    let cofactor = x.denom() / m;
    let inv = modular_inverse(&cofactor, m).expect("coprime cofactor");
    (x.numer() * inv).mod_floor(m)
}

fn reciprocal_normal_form(
    pairs: &[ReciprocalPair],
    tail: bool,
    x: &ReducedRational,
) -> Result<Option<Decomposition>> {
    let mut digits = BTreeMap::new();
    let mut rest = x.as_big_rational().clone();
    for (prime, exp) in factor_integer(x.denom())? {
        if exp > 1 {
            return Ok(None);
        }
        let numerator = match pairs.iter().find(|pair| pair.prime == prime) {
            Some(pair) => pair.numerator.clone(),
            None if tail => BigInt::one(),
            None => return Ok(None),
        };
        let modulus = BigInt::from(prime);
        let c = digit_block(x, &modulus);
        let alpha = (c * modular_inverse(&numerator, &modulus)?).mod_floor(&modulus);
        if alpha.is_zero() {
            continue;
        }
        let generator = ReducedRational::new(numerator, prime)?;
        rest -=
            generator.as_big_rational() * num_rational::BigRational::from_integer(alpha.clone());
        digits.insert(generator, alpha.to_u64().expect("digit below a u64 prime"));
    }
    debug_assert!(rest.is_integer());
    Ok(Some(Decomposition {
        integer_part: rest.to_integer(),
        digits,
    }))
}

/// Whether the integer part of a reciprocal normal form is realizable.
fn remainder_admissible(pairs: &[ReciprocalPair], tail: bool, n: &BigInt) -> Result<bool> {
    if n.is_negative() {
        return Ok(false);
    }
    if tail {
        return Ok(true);
    }
    let gens: Vec<BigInt> = pairs.iter().map(|pair| pair.numerator.clone()).collect();
    numerical_contains(&gens, n)
}

/// Digit extraction for `<1/p^n, 1/q^n>`. `None` when `d(x)` has another
/// prime factor; otherwise the integer part may be negative (non-member).
fn power_pair_normal_form(p: u64, q: u64, x: &ReducedRational) -> Option<Decomposition> {
    if !strip_primes(x.denom(), &[p, q]).is_one() {
        return None;
    }
    let mut digits = BTreeMap::new();
    let mut rest = x.as_big_rational().clone();
    for prime in [p, q] {
        let k = integer_valuation(prime, x.denom());
        if k == 0 {
            continue;
        }
        let base = BigInt::from(prime);
        let modulus = num_traits::pow(base.clone(), k as usize);
        let mut c = digit_block(x, &modulus);
        rest -= num_rational::BigRational::new(c.clone(), modulus);
        // c = Σ α_i p^(k-i): peel digits from the deepest power 1/p^k upward.
        for i in (1..=k).rev() {
            let (quot, alpha) = c.div_rem(&base);
            c = quot;
            if !alpha.is_zero() {
                let g = ReducedRational::new(1, num_traits::pow(base.clone(), i as usize))
                    .expect("positive");
                digits.insert(g, alpha.to_u64().expect("digit below prime"));
            }
        }
    }
    debug_assert!(rest.is_integer());
    Some(Decomposition {
        integer_part: rest.to_integer(),
        digits,
    })
}

/// All coefficient vectors `c` with `Σ c_i a_i = x`.
fn enumerate_factorizations(
    atoms: &[ReducedRational],
    x: &ReducedRational,
) -> Result<Vec<Vec<u64>>> {
    if x.is_zero() {
        return Ok(vec![vec![0; atoms.len()]]);
    }
    let lcm = denominator_lcm(atoms.iter().chain(std::iter::once(x)));
    let cap = || Error::CapExceeded(format!("factorization search for {x} is too large"));
    let target = x
        .scaled_integer(&lcm)
        .and_then(|t| t.to_usize())
        .ok_or_else(cap)?;
    if target > DP_LIMIT / atoms.len().max(1) {
        return Err(cap());
    }
    let weights: Vec<usize> = atoms
        .iter()
        .map(|a| {
            a.scaled_integer(&lcm)
                .and_then(|t| t.to_usize())
                .ok_or_else(cap)
        })
        .collect::<Result<_>>()?;
    // reachable[i][t]: t is a combination of weights[i..].
    let k = weights.len();
    let mut reachable = vec![vec![false; target + 1]; k + 1];
    reachable[k][0] = true;
    for i in (0..k).rev() {
        let w = weights[i];
        for t in 0..=target {
            reachable[i][t] = reachable[i + 1][t] || (t >= w && reachable[i][t - w]);
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0u64; k];
    fn walk(
        i: usize,
        remaining: usize,
        weights: &[usize],
        reachable: &[Vec<bool>],
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) -> bool {
        if i == weights.len() {
            if remaining == 0 {
                if out.len() >= FACTORIZATION_LIMIT {
                    return false;
                }
                out.push(current.clone());
            }
            return true;
        }
        let w = weights[i];
        let mut c = 0;
        loop {
            let used = c * w;
            if used > remaining {
                break;
            }
            if reachable[i + 1][remaining - used] {
                current[i] = c as u64;
                if !walk(i + 1, remaining - used, weights, reachable, current, out) {
                    return false;
                }
            }
            c += 1;
        }
        current[i] = 0;
        true
    }
    if !walk(0, target, &weights, &reachable, &mut current, &mut out) {
        return Err(cap());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ReducedRational {
        s.parse().unwrap()
    }

    fn fg(gens: &[&str]) -> MonoidSpec {
        MonoidSpec::finitely_generated(gens.iter().map(|g| q(g)).collect()).unwrap()
    }

    fn pr(pairs: &[(i64, u64)], tail: bool) -> MonoidSpec {
        MonoidSpec::prime_reciprocal(pairs.iter().map(|&(a, p)| (a.into(), p)).collect(), tail)
            .unwrap()
    }

    #[test]
    fn constructors_validate() {
        assert!(MonoidSpec::prime_power_pair(2, 2).is_err());
        assert!(MonoidSpec::prime_power_pair(2, 4).is_err());
        assert!(MonoidSpec::prime_reciprocal(vec![(2.into(), 2)], false).is_err());
        assert!(MonoidSpec::prime_reciprocal(vec![(1.into(), 3), (2.into(), 3)], false).is_err());
        assert!(MonoidSpec::finitely_generated(vec![q("0")]).is_err());
        assert_eq!(fg(&["3", "2", "3"]), fg(&["2", "3"]));
    }

    #[test]
    fn membership_examples() {
        let powers = MonoidSpec::prime_power_pair(2, 3).unwrap();
        assert!(powers.contains(&q("5/6")).unwrap());
        assert!(!powers.contains(&q("1/6")).unwrap());
        assert!(powers.contains(&q("0")).unwrap());
        assert!(!fg(&["1/2", "1/3"]).contains(&q("1/6")).unwrap());
        assert!(pr(&[(1, 2), (1, 3)], true).contains(&q("13/6")).unwrap());
        // 1/4 has a square in the denominator
        assert!(!pr(&[(1, 2)], true).contains(&q("1/4")).unwrap());
        // unlisted prime without tail is simply not a member
        assert!(!pr(&[(1, 2)], false).contains(&q("1/5")).unwrap());
        assert!(pr(&[(1, 2)], true).contains(&q("1/5")).unwrap());
        let ppr = MonoidSpec::prime_power_reciprocal(2).unwrap();
        assert!(ppr.contains(&q("7/64")).unwrap());
        assert!(!ppr.contains(&q("1/6")).unwrap());
        let bi = MonoidSpec::bi_prime_divisible(2, 3).unwrap();
        assert!(bi.contains(&q("5/72")).unwrap());
        assert!(!bi.contains(&q("1/10")).unwrap());
    }

    #[test]
    fn no_tail_remainder_uses_numerical_semigroup() {
        // <3/2, 5/7>: integer parts must lie in <3, 5>.
        let m = pr(&[(3, 2), (5, 7)], false);
        assert!(m.contains(&q("3")).unwrap());
        assert!(m.contains(&q("5")).unwrap());
        assert!(!m.contains(&q("4")).unwrap());
        assert!(!m.contains(&q("1")).unwrap());
        assert!(m.contains(&q("3/2")).unwrap());
        // 1/2 needs digit 1 at 2 (value 3/2) leaving -1
        assert!(!m.contains(&q("1/2")).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let m = pr(&[(1, 2), (1, 3)], true);
        let d = m.decompose(&q("13/6")).unwrap();
        assert_eq!(d.integer_part, 1.into());
        assert_eq!(d.digits, BTreeMap::from([(q("1/2"), 1), (q("1/3"), 2)]));
        let d = m.decompose(&q("4")).unwrap();
        assert_eq!(d.integer_part, 4.into());
        assert!(d.digits.is_empty());
        let powers = MonoidSpec::prime_power_pair(2, 3).unwrap();
        let d = powers.decompose(&q("5/6")).unwrap();
        assert_eq!(d.integer_part, 0.into());
        assert_eq!(d.digits, BTreeMap::from([(q("1/2"), 1), (q("1/3"), 1)]));
        // 3/4 = 1/2 + 1/4
        let d = powers.decompose(&q("3/4")).unwrap();
        assert_eq!(d.digits, BTreeMap::from([(q("1/2"), 1), (q("1/4"), 1)]));
        assert_eq!(powers.decompose(&q("1/6")), Err(Error::NotMember(q("1/6"))));
        assert!(matches!(
            MonoidSpec::QNonneg.decompose(&q("1")),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn atoms_examples() {
        assert_eq!(
            fg(&["2/3", "3/4", "17/12"]).atoms().unwrap(),
            Atoms::Finite(vec![q("2/3"), q("3/4")])
        );
        assert_eq!(
            MonoidSpec::prime_power_reciprocal(2)
                .unwrap()
                .atoms()
                .unwrap(),
            Atoms::Antimatter
        );
        assert_eq!(fg(&["1"]).atoms().unwrap(), Atoms::Finite(vec![q("1")]));
        assert_eq!(
            pr(&[(1, 2)], true).atoms().unwrap(),
            Atoms::FiniteWithTail(vec![q("1/2")])
        );
    }

    #[test]
    fn is_atom_examples() {
        assert!(fg(&["1/3", "1/2", "1/4", "1/8"])
            .is_atom(&q("1/3"))
            .unwrap());
        assert!(!fg(&["1/3", "1/2", "1/4", "1/8"])
            .is_atom(&q("1/2"))
            .unwrap());
        assert!(!MonoidSpec::QNonneg.is_atom(&q("1/2")).unwrap());
        assert!(!fg(&["2", "3"]).is_atom(&q("6")).unwrap());
        let m = pr(&[(3, 2)], true);
        assert!(m.is_atom(&q("3/2")).unwrap());
        assert!(m.is_atom(&q("1/7")).unwrap());
        assert!(!m.is_atom(&q("1/2")).unwrap());
        assert!(!m.is_atom(&q("1")).unwrap());
    }

    #[test]
    fn divides_examples() {
        let powers = MonoidSpec::prime_power_pair(2, 3).unwrap();
        assert!(powers.divides(&q("1/2"), &q("5/6")).unwrap());
        assert!(powers.divides(&q("0"), &q("5/6")).unwrap());
        assert!(!fg(&["2", "3"]).divides(&q("3"), &q("4")).unwrap());
        assert!(fg(&["2", "3"]).divides(&q("1"), &q("4")).is_err());
    }

    #[test]
    fn factorization_examples() {
        let m = fg(&["2", "3"]);
        let set = m.factorizations(&q("6")).unwrap();
        let expected = vec![
            Factorization {
                parts: vec![(q("2"), 3)],
            },
            Factorization {
                parts: vec![(q("3"), 2)],
            },
        ];
        let mut got = set.factorizations.clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(set.lengths, BTreeSet::from([2, 3]));
        let set = fg(&["1"]).factorizations(&q("5")).unwrap();
        assert_eq!(
            set.factorizations,
            vec![Factorization {
                parts: vec![(q("1"), 5)]
            }]
        );
        assert_eq!(set.lengths, BTreeSet::from([5]));
        assert_eq!(m.factorizations(&q("1")), Err(Error::NotMember(q("1"))));
        assert_eq!(
            MonoidSpec::QNonneg.factorizations(&q("1")),
            Err(Error::NoAtoms)
        );
        assert!(pr(&[(1, 2)], true).factorizations(&q("1")).is_err());
    }

    #[test]
    fn root_closure_and_groups() {
        assert!(MonoidSpec::QNonneg.is_root_closed().unwrap());
        assert!(!MonoidSpec::prime_power_pair(2, 3)
            .unwrap()
            .is_root_closed()
            .unwrap());
        assert!(!fg(&["1/2", "1/3"]).is_root_closed().unwrap());
        assert!(fg(&["2/5", "4/5"]).is_root_closed().unwrap());
        assert_eq!(fg(&["1/2", "1/3"]).root_closure_fg().unwrap(), q("1/6"));
        assert_eq!(fg(&["2", "3"]).root_closure_fg().unwrap(), q("1"));
        assert_eq!(fg(&["1/4"]).root_closure_fg().unwrap(), q("1/4"));
        assert_eq!(fg(&[]).root_closure_fg(), Err(Error::TrivialMonoid));
        assert_eq!(
            fg(&["1/2", "1/3"]).difference_group_generator().unwrap(),
            DifferenceGroup::Cyclic(q("1/6"))
        );
        assert_eq!(
            MonoidSpec::prime_power_pair(2, 3)
                .unwrap()
                .difference_group_generator()
                .unwrap(),
            DifferenceGroup::DenseBiPrime(2, 3)
        );
        assert_eq!(
            fg(&["1"]).difference_group_generator().unwrap(),
            DifferenceGroup::Cyclic(q("1"))
        );
    }

    #[test]
    fn atomicity_flags() {
        let m = pr(&[(1, 2)], true);
        assert!(m.is_atomic() && !m.is_antimatter() && m.has_zero_limit_point());
        let m = MonoidSpec::prime_power_pair(2, 3).unwrap();
        assert!(m.is_antimatter() && !m.is_atomic() && m.has_zero_limit_point());
        let m = fg(&["5/7"]);
        assert!(m.is_atomic() && !m.is_antimatter() && !m.has_zero_limit_point());
    }

    #[test]
    fn chain_examples() {
        let m = pr(&[(1, 2), (1, 3)], true);
        let report = m
            .verify_divisibility_chain(&[q("13/6"), q("1/2"), q("0")])
            .unwrap();
        assert_eq!(
            report,
            ChainReport {
                strict: true,
                first_violation: None
            }
        );
        let report = m.verify_divisibility_chain(&[q("1/2"), q("1/2")]).unwrap();
        assert_eq!(report.first_violation, Some(1));
        let report = fg(&["2", "3"])
            .verify_divisibility_chain(&[q("7"), q("3"), q("2")])
            .unwrap();
        assert_eq!(
            report,
            ChainReport {
                strict: false,
                first_violation: Some(2)
            }
        );
        assert!(fg(&["2", "3"])
            .verify_divisibility_chain(&[q("1")])
            .is_err());
    }

    #[test]
    fn denominator_primes() {
        let set = |m: MonoidSpec| m.denominator_prime_set(10).into_iter().collect::<Vec<_>>();
        assert_eq!(set(MonoidSpec::prime_power_reciprocal(2).unwrap()), vec![2]);
        assert_eq!(set(MonoidSpec::QNonneg), vec![2, 3, 5, 7]);
        assert_eq!(set(pr(&[(1, 2), (1, 5)], false)), vec![2, 5]);
        assert_eq!(set(fg(&["1/6", "3/10"])), vec![2, 3, 5]);
    }

    #[test]
    fn naturals_predicate() {
        assert!(fg(&["3/5"]).is_isomorphic_to_naturals().unwrap());
        assert!(!fg(&["2", "3"]).is_isomorphic_to_naturals().unwrap());
        assert!(!MonoidSpec::QNonneg.is_isomorphic_to_naturals().unwrap());
        assert!(fg(&["2", "4"]).is_isomorphic_to_naturals().unwrap());
        assert_eq!(
            fg(&[]).is_isomorphic_to_naturals(),
            Err(Error::TrivialMonoid)
        );
    }

    #[test]
    fn display_round_trips_the_grammar() {
        assert_eq!(
            pr(&[(1, 2), (1, 3)], true).to_string(),
            "pr: 1/2, 1/3; tail"
        );
        assert_eq!(fg(&["3/4", "2/3"]).to_string(), "fg: 2/3, 3/4");
        assert_eq!(
            MonoidSpec::prime_power_pair(2, 3).unwrap().to_string(),
            "powers: 2, 3"
        );
    }
}
