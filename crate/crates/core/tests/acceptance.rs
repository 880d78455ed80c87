//! Acceptance suite: one line per criterion, then a single pass/fail verdict.

mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use puiseux::dense::DensePoly;
use puiseux::poly::{content, eisenstein_applies, is_primitive};
use puiseux::{
    factor_in_algebra, factor_mod_p, factor_over_integers, frobenius_pth_root, is_irreducible,
    uufd_check, FactorOutcome, IntegerPolynomial, IrreducibilityVerdict, MonoidSpec, PrimeField,
    PuiseuxPoly, QPoly, Rationals, ReducedRational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(s: &str) -> ReducedRational {
    s.parse().unwrap()
}

fn qpoly(terms: &[(BigRational, ReducedRational)]) -> QPoly {
    PuiseuxPoly::from_terms(Rationals, terms.iter().map(|(c, e)| (e.clone(), c.clone())))
}

fn binomial(exp: ReducedRational, c: i64) -> QPoly {
    qpoly(&[
        (BigRational::one(), exp),
        (rat(c, 1), ReducedRational::zero()),
    ])
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + salt)
}

fn criterion_1() -> Check {
    let m = MonoidSpec::prime_power_pair(2, 3).map_err(|e| e.to_string())?;
    ensure(m.contains(&q("5/6")).unwrap(), || {
        "5/6 should be a member".into()
    })?;
    ensure(!m.contains(&q("1/6")).unwrap(), || {
        "1/6 should not be a member".into()
    })?;
    ensure(m.divides(&q("1/2"), &q("5/6")).unwrap(), || {
        "1/2 should divide 5/6".into()
    })
}

fn criterion_2() -> Check {
    let mut r = rng(2);
    for _ in 0..20 {
        let den: i64 = r.gen_range(1..=12);
        let num: i64 = r.gen_range(1..=3 * den);
        let exp = ReducedRational::new(num, den).unwrap();
        let f = binomial(exp.clone(), 2);
        ensure(eisenstein_applies(&f, 2).unwrap(), || {
            format!("Eisenstein fails for {f}")
        })?;
        ensure(is_primitive(&f).unwrap(), || format!("{f} not primitive"))?;
        let v = is_irreducible(&f, &MonoidSpec::QNonneg, 6).map_err(|e| e.to_string())?;
        ensure(v.is_certified(), || format!("{f}: {v:?}"))?;
    }
    Ok(())
}

fn random_integer_poly(r: &mut ChaCha8Rng) -> QPoly {
    let n = r.gen_range(1..=5);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let den = r.gen_range(1..=12);
            let e = ReducedRational::new(r.gen_range(0..=3 * den), den).unwrap();
            (rat(r.gen_range(-50..=50), 1), e)
        })
        .collect();
    let f = qpoly(&terms);
    if f.is_zero() {
        PuiseuxPoly::constant(Rationals, rat(r.gen_range(1..=50), 1))
    } else {
        f
    }
}

fn criterion_3() -> Check {
    let mut r = rng(3);
    for _ in 0..500 {
        let f = random_integer_poly(&mut r);
        let g = random_integer_poly(&mut r);
        let fg = f.mul(&g).unwrap();
        let lhs = content(&fg).unwrap();
        let rhs = content(&f).unwrap() * content(&g).unwrap();
        ensure(lhs == rhs, || {
            format!("c(({f})({g})) = {lhs}, expected {rhs}")
        })?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let mut r = rng(4);
    for _ in 0..200 {
        let mut pairs = Vec::new();
        let mut expected = BTreeMap::new();
        let n: i64 = r.gen_range(0..=20);
        let mut x = BigRational::from_integer(n.into());
        for &p in &primes {
            if !r.gen_bool(0.5) {
                continue;
            }
            let a = loop {
                let a: u64 = r.gen_range(1..=40);
                if !a.is_multiple_of(p) {
                    break a;
                }
            };
            pairs.push((BigInt::from(a), p));
            let alpha = r.gen_range(0..p);
            if alpha > 0 {
                expected.insert(ReducedRational::new(a, p).unwrap(), alpha);
            }
            x += rat((alpha * a) as i64, p as i64);
        }
        let m = MonoidSpec::prime_reciprocal(pairs, true).unwrap();
        let x = ReducedRational::from_big_rational(x).unwrap();
        let d = m.decompose(&x).map_err(|e| e.to_string())?;
        ensure(
            d.integer_part == BigInt::from(n) && d.digits == expected,
            || format!("{x} in {m}: got {d:?}, expected n={n} digits {expected:?}"),
        )?;
        ensure(d.reconstruct() == x, || {
            format!("reconstruction of {x} failed")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let gens = [rat(2, 3), rat(3, 4)];
    let m = MonoidSpec::finitely_generated(vec![q("2/3"), q("3/4")]).unwrap();
    for a in 0..=60i64 {
        for b in 1..=12i64 {
            let x = ReducedRational::new(a, b).unwrap();
            let got = m.contains(&x).unwrap();
            let want = fg_member_by_enumeration(&gens, &rat(a, b));
            ensure(got == want, || {
                format!("{a}/{b}: contains {got}, enumeration {want}")
            })?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let m = MonoidSpec::prime_power_reciprocal(2).unwrap();
    // 2 * odd keeps Eisenstein at 2 for every inflation
    let constants = [2i64, -2, 6, -6, 10, -10, 14];
    let mut r = rng(6);
    for _ in 0..50 {
        let count = r.gen_range(2..=3);
        let factors: Vec<QPoly> = (0..count)
            .map(|_| {
                let k = r.gen_range(0..=3);
                let c = constants[r.gen_range(0..constants.len())];
                binomial(ReducedRational::new(1, 1i64 << k).unwrap(), c)
            })
            .collect();
        let unit = rat(r.gen_range(1..=9), r.gen_range(1..=9));
        let f = factors
            .iter()
            .fold(PuiseuxPoly::constant(Rationals, unit), |acc, g| {
                acc.mul(g).unwrap()
            });
        match factor_in_algebra(&f, &m, 6, 8).map_err(|e| e.to_string())? {
            out @ FactorOutcome::UniqueFactorization { .. } => {
                ensure(out.reconstruct(&Rationals).as_ref() == Some(&f), || {
                    format!("reconstruction of {f} failed")
                })?;
                let FactorOutcome::UniqueFactorization { atoms, .. } = out else {
                    unreachable!()
                };
                let same = uufd_check(&f, &atoms, &factors).map_err(|e| e.to_string())?;
                ensure(same, || {
                    format!("{f}: found {atoms:?}, built from {factors:?}")
                })?;
            }
            other => return Err(format!("{f}: {other:?}")),
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let field = PrimeField::new(2).unwrap();
    let m = MonoidSpec::bi_prime_divisible(2, 3).unwrap();
    let term = |c: u64, e: &str| (q(e), c);
    let f = PuiseuxPoly::from_terms(field, [term(1, "1/3"), term(1, "0")]);
    let expected = PuiseuxPoly::from_terms(field, [term(1, "1/6"), term(1, "0")]);
    let g = frobenius_pth_root(&f, &m).map_err(|e| e.to_string())?;
    ensure(g == expected, || format!("root {g}"))?;
    ensure(g.mul(&g).unwrap() == f, || "square-back failed".into())?;
    match factor_in_algebra(&f, &m, 4, 5).map_err(|e| e.to_string())? {
        out @ FactorOutcome::NoAtomicFactorizationFound {
            frobenius_certificate: true,
            ..
        } => ensure(out.reconstruct(&field).as_ref() == Some(&f), || {
            "reconstruction failed".into()
        }),
        other => Err(format!("{other:?}")),
    }
}

fn criterion_8() -> Check {
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut instances = vec![MonoidSpec::QNonneg];
    for &p in &primes {
        instances.push(MonoidSpec::prime_power_reciprocal(p).unwrap());
        for &r in &primes {
            if r != p {
                instances.push(MonoidSpec::bi_prime_divisible(p, r).unwrap());
            }
        }
        for a in 1..=13u64 {
            if a % p != 0 {
                instances.push(MonoidSpec::prime_reciprocal(vec![(a.into(), p)], false).unwrap());
            }
        }
    }
    for a in 1..=13i64 {
        for b in 1..=13i64 {
            let g = ReducedRational::new(a, b).unwrap();
            instances.push(MonoidSpec::finitely_generated(vec![g]).unwrap());
        }
    }
    for m in &instances {
        ensure(m.is_root_closed().unwrap(), || {
            format!("{m} should be root-closed")
        })?;
        let (atomic, antimatter) = (m.is_atomic(), m.is_antimatter());
        ensure(atomic != antimatter, || {
            format!("{m}: atomic {atomic}, antimatter {antimatter}")
        })?;
        ensure(antimatter == m.has_zero_limit_point(), || {
            format!("{m}: limit point disagrees")
        })?;
    }
    Ok(())
}

fn criterion_9() -> Check {
    let f = binomial(q("1/2"), -1);
    let v1 = is_irreducible(&f, &MonoidSpec::QNonneg, 1).map_err(|e| e.to_string())?;
    ensure(!v1.is_reducible(), || format!("K=1 gave {v1:?}"))?;
    match is_irreducible(&f, &MonoidSpec::QNonneg, 4).map_err(|e| e.to_string())? {
        IrreducibilityVerdict::Reducible(a, b) => {
            let want = [binomial(q("1/4"), -1), binomial(q("1/4"), 1)];
            let got_set = [&a, &b];
            ensure(
                (got_set[0] == &want[0] && got_set[1] == &want[1])
                    || (got_set[0] == &want[1] && got_set[1] == &want[0]),
                || format!("witness {a} * {b}"),
            )?;
            ensure(a.mul(&b).unwrap() == f, || {
                "witness does not reconstruct".into()
            })
        }
        other => Err(format!("K=4 gave {other:?}")),
    }
}

fn criterion_10() -> Check {
    let mut r = rng(10);
    let mut cyclic_seen = 0;
    for i in 0..30 {
        let gens: Vec<BigRational> = if i % 3 == 0 {
            // multiples of one rational: cyclic by construction
            let base = rat(1, r.gen_range(1..=6));
            (0..r.gen_range(1..=3))
                .map(|_| &base * BigRational::from_integer(r.gen_range(1..=4).into()))
                .collect()
        } else {
            (0..r.gen_range(1..=4))
                .map(|_| rat(r.gen_range(1..=12), r.gen_range(1..=6)))
                .collect()
        };
        let spec = MonoidSpec::finitely_generated(
            gens.iter()
                .map(|g| ReducedRational::from_big_rational(g.clone()).unwrap())
                .collect(),
        )
        .unwrap();
        let oracle = minimal_generator_count(&gens) == 1;
        cyclic_seen += oracle as usize;
        let got = spec.is_isomorphic_to_naturals().unwrap();
        ensure(got == oracle, || {
            format!("{spec}: got {got}, oracle {oracle}")
        })?;
    }
    ensure(cyclic_seen > 0 && cyclic_seen < 30, || {
        "sample lacks one of the two cases".into()
    })?;
    let m = MonoidSpec::finitely_generated(vec![q("2"), q("3")]).unwrap();
    let set = m.factorizations(&q("6")).unwrap();
    let lengths: Vec<u64> = set.lengths.into_iter().collect();
    ensure(lengths == vec![2, 3], || format!("L(6) = {lengths:?}"))
}

/// Primitive integer polynomial of degree 1..=3 with positive leading
/// coefficient and no rational root (so irreducible over Q).
fn small_irreducible(r: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let d = r.gen_range(1..=3usize);
        let mut c: Vec<i64> = (0..=d).map(|_| r.gen_range(-9..=9)).collect();
        if c[d] == 0 {
            continue;
        }
        if c[d] < 0 {
            c.iter_mut().for_each(|x| *x = -*x);
        }
        if gcd_all(&c) != 1 || (d > 1 && has_rational_root(&c)) {
            continue;
        }
        break c;
    }
}

fn criterion_11() -> Check {
    for p in [2u64, 3] {
        let field = PrimeField::new(p).unwrap();
        for d in 1..=4 {
            for f in monic_of_degree(p, d) {
                let out =
                    factor_mod_p(&DensePoly::new(field, f.clone())).map_err(|e| e.to_string())?;
                let mut got: Vec<Vec<u64>> = Vec::new();
                for (g, k) in &out.factors {
                    for _ in 0..*k {
                        got.push(g.coeffs().to_vec());
                    }
                }
                got.sort_by(|a, b| {
                    a.len()
                        .cmp(&b.len())
                        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
                });
                let want = factor_brute(&f, p);
                ensure(got == want, || {
                    format!("F_{p}, {f:?}: got {got:?}, want {want:?}")
                })?;
                ensure((want.len() == 1) == is_irreducible_brute(&f, p), || {
                    format!("brute-force disagreement on {f:?}")
                })?;
            }
        }
    }

    let mut r = rng(11);
    for _ in 0..200 {
        let count = r.gen_range(1..=3);
        let parts: Vec<Vec<i64>> = (0..count).map(|_| small_irreducible(&mut r)).collect();
        let product = parts.iter().fold(IntegerPolynomial::one(), |acc, c| {
            acc.mul(&IntegerPolynomial::from_i64(c))
        });
        let out = factor_over_integers(&product).map_err(|e| e.to_string())?;
        ensure(out.expand() == product, || {
            format!("{product}: no round trip")
        })?;
        let mut got: Vec<IntegerPolynomial> = Vec::new();
        for (g, k) in &out.factors {
            for _ in 0..*k {
                got.push(g.clone());
            }
        }
        let mut want: Vec<IntegerPolynomial> = parts
            .iter()
            .map(|c| IntegerPolynomial::from_i64(c))
            .collect();
        got.sort();
        want.sort();
        ensure(got == want && out.content.is_one(), || {
            format!(
                "{product}: got {got:?} (content {}), want {want:?}",
                out.content
            )
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("prime power pair membership and divisibility", criterion_1),
        (
            "X^q + 2 is Eisenstein, primitive and certified",
            criterion_2,
        ),
        ("content is multiplicative", criterion_3),
        ("prime reciprocal decomposition is unique", criterion_4),
        (
            "finitely generated membership matches enumeration",
            criterion_5,
        ),
        ("unique factorization over <1/2^n>", criterion_6),
        ("Frobenius roots and char-p antimatter", criterion_7),
        ("root-closed monoids are atomic or antimatter", criterion_8),
        ("bounded certification is honest", criterion_9),
        (
            "cyclic specs are exactly the half-factorial ones",
            criterion_10,
        ),
        ("factorization engines agree with brute force", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", i + 1),
            Err(msg) => {
                println!("criterion {:>2}: FAIL  {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
