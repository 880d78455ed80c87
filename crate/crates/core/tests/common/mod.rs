//! Brute-force reference computations shared by the integration tests. They
//! use only plain integer arithmetic, never the library's algorithms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Is `x` a sum `Σ c_i g_i` with `c_i >= 0`? Enumerates coefficient vectors.
pub fn fg_member_by_enumeration(gens: &[BigRational], x: &BigRational) -> bool {
    fn go(gens: &[BigRational], x: &BigRational) -> bool {
        if x.is_zero() {
            return true;
        }
        let Some((g, rest)) = gens.split_first() else {
            return false;
        };
        let mut remaining = x.clone();
        loop {
            if go(rest, &remaining) {
                return true;
            }
            remaining -= g;
            if remaining.is_negative() {
                return false;
            }
        }
    }
    go(gens, x)
}

/// Integer numerical-semigroup membership by reachability table.
pub fn semigroup_contains(gens: &[u64], target: u64) -> bool {
    let mut reach = vec![false; target as usize + 1];
    reach[0] = true;
    for t in 1..=target as usize {
        reach[t] = gens
            .iter()
            .any(|&g| g as usize <= t && reach[t - g as usize]);
    }
    reach[target as usize]
}

/// Number of minimal generators of `<gens>` (positive rationals).
pub fn minimal_generator_count(gens: &[BigRational]) -> usize {
    let lcm = gens
        .iter()
        .fold(BigInt::from(1), |acc, g| acc.lcm(g.denom()));
    let mut ints: Vec<u64> = gens
        .iter()
        .map(|g| {
            (g * BigRational::from_integer(lcm.clone()))
                .to_integer()
                .to_u64()
                .unwrap()
        })
        .collect();
    ints.sort_unstable();
    ints.dedup();
    (0..ints.len())
        .filter(|&i| {
            let others: Vec<u64> = ints
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &g)| g)
                .collect();
            !semigroup_contains(&others, ints[i])
        })
        .count()
}

// ---- polynomials over F_p as Vec<u64>, ascending, trimmed ----

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` by a monic `b`.
pub fn rem_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - (c * y) % p) % p;
        }
        r = trim(r);
    }
    r
}

/// All monic polynomials of exactly degree `d` over `F_p`.
pub fn monic_of_degree(p: u64, d: usize) -> Vec<Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut n| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(n % p);
                n /= p;
            }
            c.push(1);
            c
        })
        .collect()
}

/// Monic irreducibility by trial division against every monic polynomial of
/// degree `1..=d/2`.
pub fn is_irreducible_brute(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|k| {
        monic_of_degree(p, k)
            .iter()
            .all(|g| !rem_monic(f, g, p).is_empty())
    })
}

/// Factorization of a monic `f` into monic irreducibles by repeated trial
/// division, smallest degree first; returns a sorted list with repetition.
pub fn factor_brute(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut k = 1;
    while f.len() > 1 {
        if 2 * k > f.len() - 1 {
            out.push(f.clone());
            break;
        }
        let mut found = false;
        for g in monic_of_degree(p, k) {
            if rem_monic(&f, &g, p).is_empty() {
                f = div_monic(&f, &g, p);
                out.push(g);
                found = true;
                break;
            }
        }
        if !found {
            k += 1;
        }
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().rev().cmp(b.iter().rev()))
    });
    out
}

pub fn div_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - (c * y) % p) % p;
        }
    }
    trim(q)
}

// ---- integer polynomials as Vec<i64> ----

/// Rational roots of an integer polynomial (ascending coefficients) by the
/// rational root theorem.
pub fn has_rational_root(c: &[i64]) -> bool {
    if c[0] == 0 {
        return true;
    }
    let lead = *c.last().unwrap();
    let divisors = |n: i64| (1..=n.abs()).filter(move |d| n % d == 0);
    for a in divisors(c[0]) {
        for b in divisors(lead) {
            for sign in [1i64, -1] {
                let root = BigRational::new((sign * a).into(), b.into());
                let value = c.iter().rev().fold(BigRational::zero(), |acc, &k| {
                    acc * &root + BigRational::from_integer(k.into())
                });
                if value.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

pub fn gcd_all(c: &[i64]) -> i64 {
    c.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}
