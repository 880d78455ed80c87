//! Irreducibility and factorization in the semigroup algebra `F[M]`.
//!
//! For root-closed `M` containing 1, `f` is irreducible iff `f(X^m)` is
//! irreducible in `F[X]` for every common multiple `m` of the exponent
//! denominators; every factor of an inflation deflates back into `F[M]`
//! because `1/m ∈ M`. Only finitely many `m` can be tested, so certificates
//! carry the inflation bound `K` that was reached.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::dense::DensePoly;
use crate::error::{domain, Error, Result};
use crate::factor::{DenseFactorization, Factorable};
use crate::field::CoefficientField;
use crate::field::Rationals;
use crate::monoid::{Atoms, MonoidSpec};
use crate::poly::{content, integer_coefficients, PuiseuxPoly};
use crate::rational::ReducedRational;

/// Default inflation bound `K`.
pub const DEFAULT_INFLATION_BOUND: u32 = 8;
/// Default recursion depth `D` for [`factor_in_algebra`].
pub const DEFAULT_DEPTH: u32 = 8;
/// Divisor combinations examined per inflation in the non-root-closed search.
const SPLIT_SEARCH_LIMIT: usize = 4096;
/// Largest `p` for which the Frobenius root is checked by expanding `g^p`.
const FROBENIUS_CHECK_LIMIT: u64 = 13;

/// Why an element was declared irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every inflation `f(X^{k m0})` with `k <= K` and `1/(k m0) ∈ M` is
    /// irreducible.
    InflationBound(u32),
    /// Eisenstein's criterion at this prime, on a primitive multiple.
    Eisenstein(u64),
    /// `M = <g>` is cyclic, so `F[M] = F[X^g]` and irreducibility is exact.
    CyclicExponents,
    /// A monomial whose degree is an atom of `M`.
    MonomialAtom,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::InflationBound(k) => write!(f, "inflation-bound {k}"),
            Certificate::Eisenstein(p) => write!(f, "eisenstein {p}"),
            Certificate::CyclicExponents => f.write_str("cyclic-exponents"),
            Certificate::MonomialAtom => f.write_str("monomial-atom"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityVerdict<F: CoefficientField> {
    IrreducibleCertified(Certificate),
    /// Two non-units whose product is the input.
    Reducible(PuiseuxPoly<F>, PuiseuxPoly<F>),
    /// A nonzero constant.
    Unit,
    /// The bounded search up to this `K` was inconclusive.
    Unknown(u32),
}

impl<F: CoefficientField> IrreducibilityVerdict<F> {
    pub fn is_certified(&self) -> bool {
        matches!(self, IrreducibilityVerdict::IrreducibleCertified(_))
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Reducible(..))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorOutcome<F: CoefficientField> {
    /// The input is a nonzero constant.
    UnitElement,
    /// `unit * Π atoms`, each atom certified irreducible at `bound`; atoms are
    /// normalized associates, repeated according to multiplicity.
    UniqueFactorization {
        unit: F::Elem,
        atoms: Vec<PuiseuxPoly<F>>,
        bound: u32,
    },
    /// Splitting had not stopped after `depth` rounds. `unit * Π g^e` over
    /// `factors` is the last partial factorization. With
    /// `frobenius_certificate`, every nonconstant element is provably
    /// reducible, so no factorization into atoms exists.
    NoAtomicFactorizationFound {
        depth: u32,
        frobenius_certificate: bool,
        unit: F::Elem,
        factors: Vec<(PuiseuxPoly<F>, u64)>,
    },
}

impl<F: CoefficientField> FactorOutcome<F> {
    /// The product the outcome describes; `None` for [`FactorOutcome::UnitElement`].
    pub fn reconstruct(&self, field: &F) -> Option<PuiseuxPoly<F>> {
        let product = |unit: &F::Elem, parts: &mut dyn Iterator<Item = (&PuiseuxPoly<F>, u64)>| {
            parts.fold(
                PuiseuxPoly::constant(field.clone(), unit.clone()),
                |acc, (g, e)| acc.mul(&g.pow(e)).expect("same field"),
            )
        };
        match self {
            FactorOutcome::UnitElement => None,
            FactorOutcome::UniqueFactorization { unit, atoms, .. } => {
                Some(product(unit, &mut atoms.iter().map(|g| (g, 1))))
            }
            FactorOutcome::NoAtomicFactorizationFound { unit, factors, .. } => {
                Some(product(unit, &mut factors.iter().map(|(g, e)| (g, *e))))
            }
        }
    }
}

/// A monomial `c X^q` (`c ≠ 0`) is irreducible iff `q` is an atom of `M`.
pub fn monomial_is_irreducible(monoid: &MonoidSpec, q: &ReducedRational) -> Result<bool> {
    if q.is_zero() || !monoid.contains(q)? {
        return domain(format!("{q} is not a nonzero element of the monoid"));
    }
    monoid.is_atom(q)
}

/// The units of `F[M]` are the nonzero constants.
pub fn is_unit<F: CoefficientField>(f: &PuiseuxPoly<F>) -> bool {
    f.is_constant() && !f.is_zero()
}

/// The canonical associate of a nonzero `f` and the unit `u` with `u f` equal
/// to it.
pub fn normalize<F: Factorable>(f: &PuiseuxPoly<F>) -> (PuiseuxPoly<F>, F::Elem) {
    let field = f.field();
    let Some(lead) = f.leading_coefficient() else {
        return (f.clone(), field.one());
    };
    let coeffs: Vec<F::Elem> = f.terms().iter().map(|(_, c)| c.clone()).collect();
    let u = field.normalizing_unit(&coeffs, lead);
    (f.scale(&u), u)
}

/// Generator `g` when `M = <g>` is a nontrivial cyclic monoid.
fn cyclic_generator(monoid: &MonoidSpec) -> Result<Option<ReducedRational>> {
    if monoid.is_trivial() || !monoid.is_root_closed()? {
        return Ok(None);
    }
    Ok(match monoid.atoms()? {
        Atoms::Finite(atoms) if atoms.len() == 1 => atoms.into_iter().next(),
        _ => None,
    })
}

/// `f` as a polynomial in `Y = X^g`.
fn to_cyclic<F: CoefficientField>(f: &PuiseuxPoly<F>, g: &ReducedRational) -> Result<DensePoly<F>> {
    let field = f.field().clone();
    let mut coeffs = Vec::new();
    for (q, c) in f.terms() {
        let ratio = q.as_big_rational() / g.as_big_rational();
        let k = ratio
            .is_integer()
            .then(|| ratio.to_integer().to_usize())
            .flatten()
            .ok_or_else(|| Error::ExponentNotInMonoid(q.clone()))?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, field.zero());
        }
        coeffs[k] = c.clone();
    }
    Ok(DensePoly::new(field, coeffs))
}

fn from_cyclic<F: CoefficientField>(
    h: &DensePoly<F>,
    g: &ReducedRational,
) -> Result<PuiseuxPoly<F>> {
    let field = h.field().clone();
    let mut terms = Vec::new();
    for (k, c) in h.coeffs().iter().enumerate() {
        if !field.is_zero(c) {
            terms.push((g.mul_int(&BigInt::from(k))?, c.clone()));
        }
    }
    Ok(PuiseuxPoly::from_terms(field, terms))
}

/// `f = g^p` in characteristic `p` whenever `M` is `p`-divisible.
fn frobenius_applies<F: CoefficientField>(f: &PuiseuxPoly<F>, monoid: &MonoidSpec) -> bool {
    let p = f.field().characteristic();
    p > 0 && !f.is_constant() && monoid.is_p_divisible(p)
}

/// Inflation factors `k m0`, `k = 1..=K`, with `1/(k m0) ∈ M`.
fn admissible_inflations<F: CoefficientField>(
    f: &PuiseuxPoly<F>,
    monoid: &MonoidSpec,
    bound: u32,
) -> Result<Vec<BigInt>> {
    let m0 = f.denominator_lcm();
    let mut out = Vec::new();
    for k in 1..=bound {
        let m = &m0 * k;
        if monoid.contains(&ReducedRational::new(1, m.clone())?)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Inflation factor, inflated polynomial and its factorization.
type Split<F> = (BigInt, DensePoly<F>, DenseFactorization<F>);

/// First admissible inflation at which `f` factors nontrivially.
fn first_split<F: Factorable>(
    f: &PuiseuxPoly<F>,
    monoid: &MonoidSpec,
    bound: u32,
) -> Result<Option<Split<F>>> {
    for m in admissible_inflations(f, monoid, bound)? {
        let dense = f.inflate(&m)?;
        let out = f.field().factor_dense(&dense)?;
        let total: usize = out.factors.iter().map(|(_, e)| e).sum();
        if total > 1 {
            return Ok(Some((m, dense, out)));
        }
    }
    Ok(None)
}

/// Bounded irreducibility test of `f` in `F[M]` at inflation bound `K`.
pub fn is_irreducible<F: Factorable>(
    f: &PuiseuxPoly<F>,
    monoid: &MonoidSpec,
    bound: u32,
) -> Result<IrreducibilityVerdict<F>> {
    if f.is_zero() {
        return domain("the zero polynomial is neither a unit nor irreducible");
    }
    f.check_exponents(monoid)?;
    if f.is_constant() {
        return Ok(IrreducibilityVerdict::Unit);
    }
    if frobenius_applies(f, monoid) {
        let g = frobenius_pth_root(f, monoid)?;
        let rest = g.pow(f.field().characteristic() - 1);
        return Ok(IrreducibilityVerdict::Reducible(g, rest));
    }
    if let Some(g) = cyclic_generator(monoid)? {
        let dense = to_cyclic(f, &g)?;
        let out = f.field().factor_dense(&dense)?;
        if out.factors.len() == 1 && out.factors[0].1 == 1 {
            return Ok(IrreducibilityVerdict::IrreducibleCertified(
                Certificate::CyclicExponents,
            ));
        }
        let first = out.factors[0].0.clone();
        let rest = dense.exact_div(&first)?.expect("factor divides");
        return Ok(IrreducibilityVerdict::Reducible(
            from_cyclic(&first, &g)?,
            from_cyclic(&rest, &g)?,
        ));
    }
    if monoid.is_root_closed()? {
        return Ok(match first_split(f, monoid, bound)? {
            Some((m, dense, out)) => {
                let first = out.factors[0].0.clone();
                let rest = dense.exact_div(&first)?.expect("factor divides");
                IrreducibilityVerdict::Reducible(
                    PuiseuxPoly::deflate(&first, &m, monoid)?,
                    PuiseuxPoly::deflate(&rest, &m, monoid)?,
                )
            }
            None => IrreducibilityVerdict::IrreducibleCertified(Certificate::InflationBound(bound)),
        });
    }
    screen_non_root_closed(f, monoid, bound)
}

fn screen_non_root_closed<F: Factorable>(
    f: &PuiseuxPoly<F>,
    monoid: &MonoidSpec,
    bound: u32,
) -> Result<IrreducibilityVerdict<F>> {
    let field = f.field();
    if f.num_terms() == 1 {
        let (q, c) = &f.terms()[0];
        if monoid.is_atom(q)? {
            return Ok(IrreducibilityVerdict::IrreducibleCertified(
                Certificate::MonomialAtom,
            ));
        }
        return Ok(match monoid_split(monoid, q)? {
            Some((a, b)) => IrreducibilityVerdict::Reducible(
                PuiseuxPoly::monomial(field.clone(), c.clone(), a),
                PuiseuxPoly::monomial(field.clone(), field.one(), b),
            ),
            None => IrreducibilityVerdict::Unknown(bound),
        });
    }
    if let Some(p) = field.eisenstein_prime(f) {
        return Ok(IrreducibilityVerdict::IrreducibleCertified(
            Certificate::Eisenstein(p),
        ));
    }
    // Any factorization f = g h in F[M] shows up as a divisor of f(X^m) once m
    // clears the denominators of g and h.
    let m0 = f.denominator_lcm();
    for k in 1..=bound {
        let m = &m0 * k;
        let dense = f.inflate(&m)?;
        let out = field.factor_dense(&dense)?;
        let mut exps = vec![0usize; out.factors.len()];
        let mut examined = 0;
        while next_divisor(&mut exps, &out.factors) {
            examined += 1;
            if examined > SPLIT_SEARCH_LIMIT {
                break;
            }
            let g = out
                .factors
                .iter()
                .zip(&exps)
                .fold(DensePoly::one(field.clone()), |acc, ((h, _), &e)| {
                    acc.mul(&h.pow(e as u64))
                });
            if g.degree() == dense.degree() {
                continue;
            }
            let h = dense.exact_div(&g)?.expect("divisor divides");
            let (Ok(g), Ok(h)) = (
                PuiseuxPoly::deflate(&g, &m, monoid),
                PuiseuxPoly::deflate(&h, &m, monoid),
            ) else {
                continue;
            };
            return Ok(IrreducibilityVerdict::Reducible(g, h));
        }
    }
    Ok(IrreducibilityVerdict::Unknown(bound))
}

/// Steps through exponent vectors `0 <= e_i <= mult_i`, skipping all-zero.
fn next_divisor<F: CoefficientField>(
    exps: &mut [usize],
    factors: &[(DensePoly<F>, usize)],
) -> bool {
    for (e, (_, mult)) in exps.iter_mut().zip(factors) {
        if *e < *mult {
            *e += 1;
            return true;
        }
        *e = 0;
    }
    false
}

/// Nonzero `a, b ∈ M` with `a + b = q`, searching atoms and small reciprocals.
fn monoid_split(
    monoid: &MonoidSpec,
    q: &ReducedRational,
) -> Result<Option<(ReducedRational, ReducedRational)>> {
    let mut candidates = match monoid.atoms()? {
        Atoms::Finite(v) | Atoms::FiniteWithTail(v) => v,
        Atoms::Antimatter => Vec::new(),
    };
    for p in monoid.denominator_prime_set(64) {
        let mut d = BigInt::one();
        for _ in 0..64 {
            d *= p;
            candidates.push(ReducedRational::new(1, d.clone())?);
        }
    }
    for a in candidates {
        if let Some(b) = q.checked_sub(&a) {
            if !b.is_zero() && monoid.contains(&a)? && monoid.contains(&b)? {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Irreducibility in `Z[M]`: primitive, and irreducible in `Q[M]`.
pub fn is_irreducible_integral(
    f: &PuiseuxPoly<Rationals>,
    monoid: &MonoidSpec,
    bound: u32,
) -> Result<IrreducibilityVerdict<Rationals>> {
    integer_coefficients(f)?;
    if f.is_constant() {
        return domain("integer constants are outside the scope of this test");
    }
    let c = content(f)?;
    if !c.is_one() {
        f.check_exponents(monoid)?;
        let c = num_rational::BigRational::from_integer(c);
        let primitive = f.scale(&c.recip());
        return Ok(IrreducibilityVerdict::Reducible(
            PuiseuxPoly::constant(Rationals, c),
            primitive,
        ));
    }
    Ok(match is_irreducible(f, monoid, bound)? {
        IrreducibilityVerdict::Reducible(a, b) => {
            // f primitive: both normalized parts are integral up to sign
            let (a, u) = normalize(&a);
            IrreducibilityVerdict::Reducible(a, b.scale(&u.recip()))
        }
        other => other,
    })
}

/// Factorization of `f` into certified irreducibles in `F[M]`, `M` root-closed.
pub fn factor_in_algebra<F: Factorable>(
    f: &PuiseuxPoly<F>,
    monoid: &MonoidSpec,
    bound: u32,
    depth: u32,
) -> Result<FactorOutcome<F>> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    f.check_exponents(monoid)?;
    if f.is_constant() {
        return Ok(FactorOutcome::UnitElement);
    }
    if !monoid.is_root_closed()? {
        return Err(Error::UnsupportedMonoid(format!(
            "{monoid} is not root-closed"
        )));
    }
    let field = f.field().clone();

    if frobenius_applies(f, monoid) {
        let p = field.characteristic();
        let (mut g, u) = normalize(f);
        let mut exponent = 1u64;
        for _ in 0..depth {
            g = frobenius_pth_root(&g, monoid)?;
            exponent = exponent
                .checked_mul(p)
                .ok_or_else(|| Error::CapExceeded("Frobenius exponent overflow".into()))?;
        }
        return Ok(FactorOutcome::NoAtomicFactorizationFound {
            depth,
            frobenius_certificate: true,
            unit: field.inv(&u).expect("nonzero unit"),
            factors: vec![(g, exponent)],
        });
    }

    if let Some(g) = cyclic_generator(monoid)? {
        let out = field.factor_dense(&to_cyclic(f, &g)?)?;
        let mut pieces = Vec::new();
        for (h, e) in &out.factors {
            pieces.push((from_cyclic(h, &g)?, *e as u64));
        }
        return Ok(finish_unique(out.unit, pieces, bound));
    }

    // pieces: (element, multiplicity, certified)
    let mut unit = field.one();
    let mut pieces = vec![(f.clone(), 1u64, false)];
    for round in 0..=depth {
        let mut next = Vec::with_capacity(pieces.len());
        let mut split = false;
        for (g, e, certified) in &pieces {
            if *certified {
                next.push((g.clone(), *e, true));
                continue;
            }
            match first_split(g, monoid, bound)? {
                None => next.push((g.clone(), *e, true)),
                Some(_) if round == depth => {
                    let partial = pieces.into_iter().map(|(g, e, _)| (g, e)).collect();
                    let (unit, factors) = normalized_pieces(unit, partial);
                    return Ok(FactorOutcome::NoAtomicFactorizationFound {
                        depth,
                        frobenius_certificate: false,
                        unit,
                        factors,
                    });
                }
                Some((m, _, out)) => {
                    split = true;
                    unit = field.mul(&unit, &field.pow(&out.unit, *e));
                    for (h, k) in &out.factors {
                        next.push((PuiseuxPoly::deflate(h, &m, monoid)?, e * *k as u64, false));
                    }
                }
            }
        }
        pieces = next;
        if !split {
            break;
        }
    }
    let pieces = pieces.into_iter().map(|(g, e, _)| (g, e)).collect();
    Ok(finish_unique(unit, pieces, bound))
}

/// Normalizes every piece, moving the scalars into the unit, and merges equal
/// pieces.
fn normalized_pieces<F: Factorable>(
    mut unit: F::Elem,
    pieces: Vec<(PuiseuxPoly<F>, u64)>,
) -> (F::Elem, Vec<(PuiseuxPoly<F>, u64)>) {
    let mut merged: Vec<(PuiseuxPoly<F>, u64)> = Vec::new();
    for (g, e) in pieces {
        let field = g.field().clone();
        let (g, u) = normalize(&g);
        let inv = field.inv(&u).expect("nonzero unit");
        unit = field.mul(&unit, &field.pow(&inv, e));
        match merged.iter_mut().find(|(h, _)| *h == g) {
            Some((_, k)) => *k += e,
            None => merged.push((g, e)),
        }
    }
    merged.sort_by_cached_key(|(g, _)| (g.degree().ok(), g.to_string()));
    (unit, merged)
}

fn finish_unique<F: Factorable>(
    unit: F::Elem,
    pieces: Vec<(PuiseuxPoly<F>, u64)>,
    bound: u32,
) -> FactorOutcome<F> {
    let (unit, pieces) = normalized_pieces(unit, pieces);
    let atoms = pieces
        .into_iter()
        .flat_map(|(g, e)| std::iter::repeat_n(g, e as usize))
        .collect();
    FactorOutcome::UniqueFactorization { unit, atoms, bound }
}

/// Whether two factor lists of `f` agree up to order and unit multiples.
pub fn uufd_check<F: Factorable>(
    f: &PuiseuxPoly<F>,
    first: &[PuiseuxPoly<F>],
    second: &[PuiseuxPoly<F>],
) -> Result<bool> {
    if f.is_zero() {
        return domain("the zero polynomial has no factorizations");
    }
    let field = f.field().clone();
    let mut classes = Vec::with_capacity(2);
    for list in [first, second] {
        let mut product = PuiseuxPoly::one(field.clone());
        for g in list {
            if g.is_constant() {
                return domain(format!("factor {g} is constant"));
            }
            product = product.mul(g)?;
        }
        let ratio = field
            .div(
                f.leading_coefficient().unwrap(),
                product.leading_coefficient().unwrap(),
            )
            .expect("nonzero leading coefficient");
        if product.scale(&ratio) != *f {
            return domain("factor list does not multiply to the element");
        }
        let mut normalized: Vec<PuiseuxPoly<F>> = list.iter().map(|g| normalize(g).0).collect();
        normalized.sort_by_cached_key(|g| (g.degree().ok(), g.to_string()));
        classes.push(normalized);
    }
    Ok(classes[0] == classes[1])
}

/// The `g` with `g^p = f` over `F_p`, exponents divided by `p`.
pub fn frobenius_pth_root<F: CoefficientField>(
    f: &PuiseuxPoly<F>,
    monoid: &MonoidSpec,
) -> Result<PuiseuxPoly<F>> {
    let field = f.field();
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::UnsupportedField(format!(
            "{} has characteristic zero",
            field.descriptor()
        )));
    }
    f.check_exponents(monoid)?;
    let mut terms = Vec::with_capacity(f.num_terms());
    for (q, c) in f.terms() {
        let r = q.div_int(&BigInt::from(p))?;
        if !monoid.contains(&r)? {
            return Err(Error::ExponentNotInMonoid(r));
        }
        // c^(1/p) = c in the prime field
        terms.push((r, c.clone()));
    }
    let g = PuiseuxPoly::from_terms(field.clone(), terms);
    if p <= FROBENIUS_CHECK_LIMIT && g.pow(p) != *f {
        return domain("Frobenius root check failed");
    }
    Ok(g)
}
