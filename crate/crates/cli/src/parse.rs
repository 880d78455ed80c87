//! Text grammars for monoid specs and Puiseux polynomials.
//!
//! Monoids: `fg: g1, g2, ...`, `pr: a1/p1, ... [; tail]`, `qplus`, `ppr: p`,
//! `biprime: p, q`, `powers: p, q`.
//!
//! Polynomials: terms joined by `+`/`-`, each `[coeff "*"] "X" ["^" exp]` or
//! `coeff`, where `exp` is an integer or `(a/b)` and `coeff` is an integer,
//! `a/b`, or a parenthesized (optionally negative) rational.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use puiseux::{CoefficientField, MonoidSpec, PuiseuxPoly, ReducedRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// Malformed input at this byte offset.
    Syntax { offset: usize, message: String },
    /// Well-formed input with invalid parameters (non-prime modulus, ...).
    Validation(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {offset}: {message}")
            }
            ParseError::Validation(message) => write!(f, "validation error: {message}"),
        }
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn describe_next(&self) -> String {
        match self.text[self.pos..].chars().next() {
            Some(c) => format!("unexpected {c:?}"),
            None => "unexpected end of input".to_string(),
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> PResult<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            let found = self.describe_next();
            self.error(format!("expected {:?}, {found}", byte as char))
        }
    }

    fn digits(&mut self) -> PResult<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe_next();
            return self.error(format!("expected digits, {found}"));
        }
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }

    /// `a` or `a/b`, no whitespace inside.
    fn rational_parts(&mut self) -> PResult<(BigInt, BigInt)> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError::Syntax {
                    offset: at,
                    message: "zero denominator".into(),
                });
            }
            Ok((num, den))
        } else {
            Ok((num, BigInt::one()))
        }
    }

    fn keyword(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn u64_param(&mut self) -> PResult<u64> {
        let at = self.pos;
        let n = self.digits()?;
        u64::try_from(&n).map_err(|_| ParseError::Syntax {
            offset: at,
            message: "parameter does not fit in 64 bits".into(),
        })
    }

    fn finish(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.pos < self.text.len() {
            let found = self.describe_next();
            return self.error(format!("trailing input: {found}"));
        }
        Ok(())
    }
}

fn validation(err: puiseux::Error) -> ParseError {
    ParseError::Validation(err.to_string())
}

pub fn parse_monoid(text: &str) -> PResult<MonoidSpec> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let at = cur.pos;
    let family = cur.keyword();
    cur.skip_ws();
    let spec = match family {
        "qplus" => MonoidSpec::QNonneg,
        "fg" => {
            cur.expect(b':')?;
            let mut generators = Vec::new();
            for (num, den) in rational_list(&mut cur)? {
                generators.push(ReducedRational::new(num, den).map_err(validation)?);
            }
            MonoidSpec::finitely_generated(generators).map_err(validation)?
        }
        "pr" => {
            cur.expect(b':')?;
            let mut pairs = Vec::new();
            let list_start = cur.pos;
            for (num, den) in rational_list(&mut cur)? {
                let p = u64::try_from(&den).map_err(|_| ParseError::Syntax {
                    offset: list_start,
                    message: "denominator does not fit in 64 bits".into(),
                })?;
                pairs.push((num, p));
            }
            cur.skip_ws();
            let tail = if cur.eat(b';') {
                cur.skip_ws();
                let at = cur.pos;
                if cur.keyword() != "tail" {
                    cur.pos = at;
                    return cur.error("expected \"tail\" after \";\"");
                }
                true
            } else {
                false
            };
            MonoidSpec::prime_reciprocal(pairs, tail).map_err(validation)?
        }
        "ppr" => {
            cur.expect(b':')?;
            cur.skip_ws();
            MonoidSpec::prime_power_reciprocal(cur.u64_param()?).map_err(validation)?
        }
        "biprime" | "powers" => {
            cur.expect(b':')?;
            cur.skip_ws();
            let p = cur.u64_param()?;
            cur.skip_ws();
            cur.expect(b',')?;
            cur.skip_ws();
            let q = cur.u64_param()?;
            if family == "biprime" {
                MonoidSpec::bi_prime_divisible(p, q).map_err(validation)?
            } else {
                MonoidSpec::prime_power_pair(p, q).map_err(validation)?
            }
        }
        "" => {
            cur.pos = at;
            return cur.error("expected a monoid family (fg, pr, qplus, ppr, biprime, powers)");
        }
        other => {
            return Err(ParseError::Syntax {
                offset: at,
                message: format!("unknown monoid family {other:?}"),
            })
        }
    };
    cur.finish()?;
    Ok(spec)
}

/// Comma separated rationals, possibly empty.
fn rational_list(cur: &mut Cursor<'_>) -> PResult<Vec<(BigInt, BigInt)>> {
    let mut out = Vec::new();
    cur.skip_ws();
    if !cur.peek().is_some_and(|b| b.is_ascii_digit()) {
        return Ok(out);
    }
    loop {
        out.push(cur.rational_parts()?);
        cur.skip_ws();
        if !cur.eat(b',') {
            return Ok(out);
        }
        cur.skip_ws();
    }
}

/// A comma separated list of nonnegative rationals, e.g. a divisibility chain.
pub fn parse_rational_list(text: &str) -> PResult<Vec<ReducedRational>> {
    let mut cur = Cursor::new(text);
    let parts = rational_list(&mut cur)?;
    cur.finish()?;
    parts
        .into_iter()
        .map(|(n, d)| ReducedRational::new(n, d).map_err(validation))
        .collect()
}

/// A single nonnegative rational literal `a` or `a/b`.
pub fn parse_rational(text: &str) -> PResult<ReducedRational> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let (n, d) = cur.rational_parts()?;
    cur.finish()?;
    ReducedRational::new(n, d).map_err(validation)
}

/// Raw `(exponent, coefficient)` terms, not yet merged.
pub fn parse_poly_terms(text: &str) -> PResult<Vec<(ReducedRational, BigRational)>> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    cur.skip_ws();
    let mut negative = cur.eat(b'-');
    loop {
        cur.skip_ws();
        let (q, c) = term(&mut cur)?;
        terms.push((q, if negative { -c } else { c }));
        cur.skip_ws();
        negative = match cur.peek() {
            Some(b'+') => false,
            Some(b'-') => true,
            None => break,
            Some(_) => {
                let found = cur.describe_next();
                return cur.error(format!("expected \"+\" or \"-\", {found}"));
            }
        };
        cur.pos += 1;
    }
    Ok(terms)
}

fn term(cur: &mut Cursor<'_>) -> PResult<(ReducedRational, BigRational)> {
    match cur.peek() {
        Some(b'X') => Ok((monomial(cur)?, BigRational::one())),
        Some(b) if b.is_ascii_digit() || b == b'(' => {
            let c = coefficient(cur)?;
            let save = cur.pos;
            cur.skip_ws();
            if cur.eat(b'*') {
                cur.skip_ws();
                if cur.peek() != Some(b'X') {
                    let found = cur.describe_next();
                    return cur.error(format!("expected \"X\" after \"*\", {found}"));
                }
                Ok((monomial(cur)?, c))
            } else {
                cur.pos = save;
                Ok((ReducedRational::zero(), c))
            }
        }
        Some(b'-') => cur.error("unary minus is only allowed on coefficients"),
        _ => {
            let found = cur.describe_next();
            cur.error(format!("expected a term, {found}"))
        }
    }
}

fn coefficient(cur: &mut Cursor<'_>) -> PResult<BigRational> {
    if cur.eat(b'(') {
        cur.skip_ws();
        let negative = cur.eat(b'-');
        cur.skip_ws();
        let (n, d) = cur.rational_parts()?;
        cur.skip_ws();
        cur.expect(b')')?;
        let c = BigRational::new(n, d);
        return Ok(if negative { -c } else { c });
    }
    let (n, d) = cur.rational_parts()?;
    Ok(BigRational::new(n, d))
}

fn monomial(cur: &mut Cursor<'_>) -> PResult<ReducedRational> {
    cur.expect(b'X')?;
    let save = cur.pos;
    cur.skip_ws();
    if !cur.eat(b'^') {
        cur.pos = save;
        return Ok(ReducedRational::one());
    }
    cur.skip_ws();
    if cur.peek() == Some(b'-') {
        return cur.error("negative exponents are not allowed");
    }
    let (n, d) = if cur.eat(b'(') {
        cur.skip_ws();
        if cur.peek() == Some(b'-') {
            return cur.error("negative exponents are not allowed");
        }
        let parts = cur.rational_parts()?;
        cur.skip_ws();
        cur.expect(b')')?;
        parts
    } else {
        (cur.digits()?, BigInt::one())
    };
    ReducedRational::new(n, d).map_err(validation)
}

/// Parses and canonicalizes a polynomial over `field`; coefficients are
/// mapped into the field (reduced mod `p` over `F_p`).
pub fn parse_poly<F: CoefficientField>(text: &str, field: &F) -> Result<PuiseuxPoly<F>, PolyError> {
    let terms = parse_poly_terms(text)?;
    let mut mapped = Vec::with_capacity(terms.len());
    for (q, c) in terms {
        mapped.push((q, field.from_rational(&c).map_err(PolyError::Field)?));
    }
    Ok(PuiseuxPoly::from_terms(field.clone(), mapped))
}

/// Failure of [`parse_poly`]: bad text, or a coefficient with no image in the
/// field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    Parse(ParseError),
    Field(puiseux::Error),
}

impl From<ParseError> for PolyError {
    fn from(err: ParseError) -> Self {
        PolyError::Parse(err)
    }
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Parse(err) => err.fmt(f),
            PolyError::Field(err) => err.fmt(f),
        }
    }
}
