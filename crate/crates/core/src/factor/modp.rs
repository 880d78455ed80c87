//! Factorization over prime fields: squarefree decomposition, distinct-degree
//! splitting and Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DenseFactorization;
use crate::dense::DensePoly;
use crate::error::{domain, Result};
use crate::field::PrimeField;

/// A polynomial over `F_p`.
pub type ModPolynomial = DensePoly<PrimeField>;

const SPLIT_SEED: u64 = 0x5eed_f00d;

/// Factors `f` into monic irreducibles with multiplicities; the leading
/// coefficient is returned as the unit. Output is sorted by degree, then by
/// coefficients.
pub fn factor_mod_p(f: &ModPolynomial) -> Result<DenseFactorization<PrimeField>> {
    let Some(&lead) = f.leading() else {
        return domain("cannot factor the zero polynomial");
    };
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, degree) in distinct_degree(&part)? {
            for irreducible in equal_degree(&block, degree, &mut rng)? {
                factors.push((irreducible, mult));
            }
        }
    }
    sort_factors(&mut factors);
    Ok(DenseFactorization {
        unit: lead,
        factors,
    })
}

pub(crate) fn sort_factors(factors: &mut [(ModPolynomial, usize)]) {
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
}

/// `f = Π g_i^{m_i}` with each `g_i` squarefree, monic and pairwise coprime.
pub fn squarefree_decomposition(f: &ModPolynomial) -> Vec<(ModPolynomial, usize)> {
    let field = *f.field();
    let p = field.modulus() as usize;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).unwrap().expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap().expect("gcd divides");
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).unwrap().expect("gcd divides");
        w = y;
    }
    if !c.is_constant() {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// For `f` whose exponents are all multiples of `p`, the `g` with `g^p = f`
/// (coefficients are their own p-th roots in `F_p`).
fn pth_root(f: &ModPolynomial) -> ModPolynomial {
    let p = f.field().modulus() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    DensePoly::new(*f.field(), coeffs)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree, as `(product, degree)` pairs.
pub fn distinct_degree(f: &ModPolynomial) -> Result<Vec<(ModPolynomial, usize)>> {
    let field = *f.field();
    let p = BigUint::from(field.modulus());
    let x = DensePoly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&p, &rest)?;
        let g = rest.gcd(&h.sub(&x));
        if !g.is_constant() {
            rest = rest.exact_div(&g)?.expect("gcd divides");
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree(
    f: &ModPolynomial,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ModPolynomial>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = *f.field();
    let p = field.modulus();
    let exponent = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = DensePoly::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.is_constant() {
            continue;
        }
        let mut g = f.gcd(&a);
        if g.is_constant() {
            let b = if p == 2 {
                // absolute trace a + a^2 + ... + a^(2^(d-1))
                let mut term = a.rem(f)?;
                let mut sum = term.clone();
                for _ in 1..d {
                    term = term.mul(&term).rem(f)?;
                    sum = sum.add(&term);
                }
                sum
            } else {
                a.pow_mod(&exponent, f)?.sub(&DensePoly::one(field))
            };
            g = f.gcd(&b);
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = f.exact_div(&g)?.expect("gcd divides");
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&other, d, rng)?);
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> ModPolynomial {
        DensePoly::new(PrimeField::new(p).unwrap(), c.to_vec())
    }

    #[test]
    fn examples() {
        let f = factor_mod_p(&poly(3, &[2, 0, 1])).unwrap();
        assert_eq!(
            f.factors,
            vec![(poly(3, &[1, 1]), 1), (poly(3, &[2, 1]), 1)]
        );
        let f = factor_mod_p(&poly(3, &[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(3, &[1, 0, 1]), 1)]);
        let f = factor_mod_p(&poly(7, &[0, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(7, &[0, 1]), 1)]);
        assert!(factor_mod_p(&poly(5, &[])).is_err());
    }

    #[test]
    fn x4_plus_1_over_f2_is_a_fourth_power() {
        let f = factor_mod_p(&poly(2, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(2, &[1, 1]), 4)]);
    }

    #[test]
    fn repeated_and_inseparable_parts() {
        // (X+1)^3 (X^2+X+2)^5 over F_3, with X^3-type inseparable pieces
        let a = poly(3, &[1, 1]);
        let b = poly(3, &[2, 1, 1]);
        let f = a.pow(3).mul(&b.pow(5)).scale(&2);
        let out = factor_mod_p(&f).unwrap();
        assert_eq!(out.unit, 2);
        assert_eq!(out.factors, vec![(a, 3), (b, 5)]);
    }
}
