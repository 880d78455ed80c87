//! Command line front end: argument handling, dispatch and output formatting.
//!
//! Exit codes: 0 success, 1 a predicate came out false, 2 usage or parse
//! error, 3 domain error, 4 cap exceeded or undecided.

pub mod parse;

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use puiseux::algebra::{DEFAULT_DEPTH, DEFAULT_INFLATION_BOUND};
use puiseux::monoid::{Atoms, FactorizationSet};
use puiseux::poly::{content, eisenstein_applies, is_primitive};
use puiseux::{
    factor_in_algebra, frobenius_pth_root, is_irreducible, is_irreducible_integral, uufd_check,
    CoefficientField, Error, FactorOutcome, Factorable, FieldDescriptor, IrreducibilityVerdict,
    MonoidSpec, PrimeField, PuiseuxPoly, Rationals, ReducedRational,
};
use serde_json::{Map, Value};

pub use parse::{parse_monoid, parse_poly, parse_poly_terms, ParseError, PolyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "puiseux",
    version,
    about = "Exact computation in Puiseux monoids and their algebras"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Coefficient field: Q or Fp:<p>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Inflation bound K for irreducibility certification.
    #[arg(long, global = true, default_value_t = DEFAULT_INFLATION_BOUND)]
    bound: u32,
    /// Recursion depth D for factorization.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: u32,
    /// Print a JSON object instead of key: value lines.
    #[arg(long, global = true)]
    structured: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership of a rational in a monoid.
    Member { monoid: String, element: String },
    /// Canonical decomposition n + sum of digits times atoms.
    Decompose { monoid: String, element: String },
    /// The atoms of a monoid.
    Atoms { monoid: String },
    /// Whether y divides z in the monoid.
    Divides {
        monoid: String,
        y: String,
        z: String,
    },
    /// All factorizations of an element into atoms.
    Factorizations {
        monoid: String,
        element: String,
        /// Replace a prime reciprocal tail by 1/p for primes up to this bound.
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Structural properties of a monoid and its algebras.
    MonoidInfo { monoid: String },
    /// Content of an integer-coefficient polynomial.
    Content {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Whether the content is 1.
    Primitive {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Eisenstein's criterion at a prime.
    Eisenstein {
        #[arg(long)]
        p: u64,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// f(X^m); m defaults to the lcm of the exponent denominators.
    Inflate {
        #[arg(long)]
        m: Option<u64>,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Bounded irreducibility test in F[M].
    Irreducible {
        monoid: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Test in Z[M] (primitive and irreducible over Q).
        #[arg(long)]
        integral: bool,
    },
    /// Factorization into certified irreducibles (root-closed monoids).
    Factor {
        monoid: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// p-th root of an element over F_p.
    FrobeniusRoot {
        monoid: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Whether two factor lists ("g; h; ...") agree up to order and units.
    UufdCheck {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Strictness of a divisibility chain q1, q2, ... (each step divides the previous).
    ChainVerify { monoid: String, chain: String },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Ordered key/value report, printed as lines or as a JSON object.
#[derive(Default)]
struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    fn list(&mut self, key: &str, items: Vec<String>) -> &mut Self {
        self.put(
            key,
            Value::Array(items.into_iter().map(Value::String).collect()),
        )
    }

    fn render(&self, structured: bool) -> String {
        if structured {
            let map: Map<String, Value> = self.fields.iter().cloned().collect();
            return format!("{}\n", Value::Object(map));
        }
        let mut out = String::new();
        for (key, value) in &self.fields {
            match value {
                Value::Array(items) => {
                    for item in items {
                        out.push_str(&format!("{key}: {}\n", plain(item)));
                    }
                }
                other => out.push_str(&format!("{key}: {}\n", plain(other))),
            }
        }
        out
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Lib(err)
    }
}

impl From<ParseError> for Failure {
    fn from(err: ParseError) -> Self {
        Failure::Usage(err.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(err: PolyError) -> Self {
        match err {
            PolyError::Parse(err) => err.into(),
            PolyError::Field(err) => Failure::Lib(err),
        }
    }
}

type Run = Result<(Report, i32), Failure>;

/// Runs one command line; `stdin` supplies polynomial text given as `-`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let text = err.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let structured = cli.global.structured;
    match dispatch(&cli, stdin) {
        Ok((report, code)) => Outcome {
            code,
            stdout: report.render(structured),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Lib(err)) => {
            let code = match err {
                Error::CapExceeded(_) => EXIT_UNDECIDED,
                _ => EXIT_DOMAIN,
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {err}\n"),
            }
        }
    }
}

fn predicate(value: bool) -> i32 {
    if value {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn read_text(text: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut buf = String::new();
    stdin
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn element(text: &str) -> Result<ReducedRational, Failure> {
    Ok(parse::parse_rational(text)?)
}

fn field(opts: &GlobalOpts) -> Result<FieldDescriptor, Failure> {
    opts.field
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Run {
    let opts = &cli.global;
    match &cli.command {
        Command::Member { monoid, element: x } => {
            let m = parse_monoid(monoid)?;
            let member = m.contains(&element(x)?)?;
            let mut r = Report::default();
            r.put("member", member);
            Ok((r, predicate(member)))
        }
        Command::Decompose { monoid, element: x } => {
            let m = parse_monoid(monoid)?;
            let d = m.decompose(&element(x)?)?;
            let mut r = Report::default();
            r.put("integer-part", d.integer_part.to_string());
            r.list(
                "digit",
                d.digits.iter().map(|(a, k)| format!("{a}:{k}")).collect(),
            );
            Ok((r, EXIT_OK))
        }
        Command::Atoms { monoid } => {
            let m = parse_monoid(monoid)?;
            let mut r = Report::default();
            atoms_report(&mut r, &m)?;
            Ok((r, EXIT_OK))
        }
        Command::Divides { monoid, y, z } => {
            let m = parse_monoid(monoid)?;
            let d = m.divides(&element(y)?, &element(z)?)?;
            let mut r = Report::default();
            r.put("divides", d);
            Ok((r, predicate(d)))
        }
        Command::Factorizations {
            monoid,
            element: x,
            prime_bound,
        } => {
            let mut m = parse_monoid(monoid)?;
            if let Some(bound) = prime_bound {
                m = m.truncated(*bound);
            }
            let set = m.factorizations(&element(x)?)?;
            let mut r = Report::default();
            factorizations_report(&mut r, &set);
            Ok((r, EXIT_OK))
        }
        Command::MonoidInfo { monoid } => {
            let m = parse_monoid(monoid)?;
            let mut r = Report::default();
            r.put("family", m.family_name());
            r.put("spec", m.to_string());
            r.put("trivial", m.is_trivial());
            r.put("root-closed", m.is_root_closed()?);
            r.put("atomic", m.is_atomic());
            r.put("antimatter", m.is_antimatter());
            r.put("zero-limit-point", m.has_zero_limit_point());
            if m.is_trivial() {
                r.put("half-factorial-algebra", "n/a");
                r.put("pid-algebra", "n/a");
                r.put("gp-generator", "0");
            } else {
                let cyclic = m.is_isomorphic_to_naturals()?;
                r.put("half-factorial-algebra", cyclic);
                r.put("pid-algebra", cyclic);
                r.put("gp-generator", m.difference_group_generator()?.to_string());
            }
            Ok((r, EXIT_OK))
        }
        Command::Content { poly } => {
            let f = rational_poly(opts, poly, stdin)?;
            let mut r = Report::default();
            r.put("content", content(&f)?.to_string());
            Ok((r, EXIT_OK))
        }
        Command::Primitive { poly } => {
            let f = rational_poly(opts, poly, stdin)?;
            let p = is_primitive(&f)?;
            let mut r = Report::default();
            r.put("primitive", p);
            Ok((r, predicate(p)))
        }
        Command::Eisenstein { p, poly } => {
            let f = rational_poly(opts, poly, stdin)?;
            let applies = eisenstein_applies(&f, *p)?;
            let mut r = Report::default();
            r.put("applies", applies);
            Ok((r, predicate(applies)))
        }
        Command::Inflate { m, poly } => match field(opts)? {
            FieldDescriptor::Rationals => inflate(Rationals, *m, poly, stdin),
            FieldDescriptor::PrimeField(p) => inflate(PrimeField::new(p)?, *m, poly, stdin),
        },
        Command::Irreducible {
            monoid,
            poly,
            integral,
        } => {
            let m = parse_monoid(monoid)?;
            match field(opts)? {
                FieldDescriptor::Rationals => {
                    let f = parse_poly(&read_text(poly, stdin)?, &Rationals)?;
                    let verdict = if *integral {
                        is_irreducible_integral(&f, &m, opts.bound)?
                    } else {
                        is_irreducible(&f, &m, opts.bound)?
                    };
                    Ok(verdict_report(verdict, opts.bound))
                }
                FieldDescriptor::PrimeField(_) if *integral => {
                    Err(Failure::Usage("--integral needs --field Q".into()))
                }
                FieldDescriptor::PrimeField(p) => {
                    let f = parse_poly(&read_text(poly, stdin)?, &PrimeField::new(p)?)?;
                    Ok(verdict_report(
                        is_irreducible(&f, &m, opts.bound)?,
                        opts.bound,
                    ))
                }
            }
        }
        Command::Factor { monoid, poly } => {
            let m = parse_monoid(monoid)?;
            match field(opts)? {
                FieldDescriptor::Rationals => factor(Rationals, &m, poly, opts, stdin),
                FieldDescriptor::PrimeField(p) => {
                    factor(PrimeField::new(p)?, &m, poly, opts, stdin)
                }
            }
        }
        Command::FrobeniusRoot { monoid, poly } => {
            let m = parse_monoid(monoid)?;
            match field(opts)? {
                FieldDescriptor::Rationals => Err(Error::UnsupportedField(
                    "Frobenius roots need --field Fp:<p>".into(),
                )
                .into()),
                FieldDescriptor::PrimeField(p) => {
                    let fld = PrimeField::new(p)?;
                    let f = parse_poly(&read_text(poly, stdin)?, &fld)?;
                    let g = frobenius_pth_root(&f, &m)?;
                    let verified = g.pow(p) == f;
                    let mut r = Report::default();
                    r.put("root", g.to_string());
                    r.put("verified", verified);
                    Ok((r, EXIT_OK))
                }
            }
        }
        Command::UufdCheck {
            poly,
            first,
            second,
        } => match field(opts)? {
            FieldDescriptor::Rationals => uufd(Rationals, poly, first, second, stdin),
            FieldDescriptor::PrimeField(p) => uufd(PrimeField::new(p)?, poly, first, second, stdin),
        },
        Command::ChainVerify { monoid, chain } => {
            let m = parse_monoid(monoid)?;
            let chain = parse::parse_rational_list(chain)?;
            let report = m.verify_divisibility_chain(&chain)?;
            let mut r = Report::default();
            r.put("strict", report.strict);
            r.put("length", chain.len());
            if let Some(step) = report.first_violation {
                r.put("first-violation", step);
            }
            Ok((r, predicate(report.strict)))
        }
    }
}

fn rational_poly(
    opts: &GlobalOpts,
    text: &str,
    stdin: &mut dyn Read,
) -> Result<PuiseuxPoly<Rationals>, Failure> {
    if field(opts)? != FieldDescriptor::Rationals {
        return Err(Error::UnsupportedField("content and Eisenstein need --field Q".into()).into());
    }
    Ok(parse_poly(&read_text(text, stdin)?, &Rationals)?)
}

fn atoms_report(r: &mut Report, m: &MonoidSpec) -> Result<(), Failure> {
    match m.atoms()? {
        Atoms::Finite(atoms) => {
            r.put("kind", "finite");
            r.put("atoms", join(&atoms));
        }
        Atoms::FiniteWithTail(atoms) => {
            r.put("kind", "finite-with-tail");
            r.put("atoms", join(&atoms));
        }
        Atoms::Antimatter => {
            r.put("kind", "antimatter");
            r.put("atoms", "");
        }
    }
    Ok(())
}

fn join(values: &[ReducedRational]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn factorizations_report(r: &mut Report, set: &FactorizationSet) {
    r.put("element", set.element.to_string());
    r.put("count", set.factorizations.len());
    let lengths: Vec<String> = set.lengths.iter().map(ToString::to_string).collect();
    r.put("lengths", lengths.join(", "));
    r.put("half-factorial", set.lengths.len() <= 1);
    r.list(
        "factorization",
        set.factorizations
            .iter()
            .map(|z| {
                z.parts
                    .iter()
                    .filter(|(_, k)| *k > 0)
                    .map(|(a, k)| format!("{a}:{k}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect(),
    );
}

fn inflate<F: CoefficientField>(fld: F, m: Option<u64>, text: &str, stdin: &mut dyn Read) -> Run {
    let f = parse_poly(&read_text(text, stdin)?, &fld)?;
    let m = m.map(Into::into).unwrap_or_else(|| f.denominator_lcm());
    let g = f.inflate(&m)?;
    let mut r = Report::default();
    r.put("m", m.to_string());
    r.put("inflation", g.to_string());
    Ok((r, EXIT_OK))
}

fn verdict_report<F: CoefficientField>(
    verdict: IrreducibilityVerdict<F>,
    bound: u32,
) -> (Report, i32) {
    let mut r = Report::default();
    let code = match verdict {
        IrreducibilityVerdict::IrreducibleCertified(cert) => {
            r.put("status", "irreducible");
            r.put("certificate", cert.to_string());
            EXIT_OK
        }
        IrreducibilityVerdict::Reducible(a, b) => {
            r.put("status", "reducible");
            r.put("left", a.to_string());
            r.put("right", b.to_string());
            EXIT_FALSE
        }
        IrreducibilityVerdict::Unit => {
            r.put("status", "unit");
            EXIT_FALSE
        }
        IrreducibilityVerdict::Unknown(_) => {
            r.put("status", "unknown");
            EXIT_UNDECIDED
        }
    };
    r.put("bound", bound);
    (r, code)
}

fn factor<F: Factorable>(
    fld: F,
    m: &MonoidSpec,
    text: &str,
    opts: &GlobalOpts,
    stdin: &mut dyn Read,
) -> Run {
    let f = parse_poly(&read_text(text, stdin)?, &fld)?;
    let mut r = Report::default();
    let code = match factor_in_algebra(&f, m, opts.bound, opts.depth)? {
        FactorOutcome::UnitElement => {
            r.put("status", "unit");
            EXIT_OK
        }
        FactorOutcome::UniqueFactorization { unit, atoms, bound } => {
            r.put("status", "unique");
            r.put("unit", fld.format_elem(&unit));
            r.put("bound", bound);
            r.list("atom", atoms.iter().map(ToString::to_string).collect());
            EXIT_OK
        }
        FactorOutcome::NoAtomicFactorizationFound {
            depth,
            frobenius_certificate,
            unit,
            factors,
        } => {
            r.put("status", "no-atomic-factorization");
            r.put("depth", depth);
            r.put("frobenius-certificate", frobenius_certificate);
            r.put("unit", fld.format_elem(&unit));
            r.list(
                "factor",
                factors.iter().map(|(g, e)| format!("({g})^{e}")).collect(),
            );
            if frobenius_certificate {
                EXIT_OK
            } else {
                EXIT_UNDECIDED
            }
        }
    };
    Ok((r, code))
}

fn factor_list<F: CoefficientField>(fld: &F, text: &str) -> Result<Vec<PuiseuxPoly<F>>, Failure> {
    text.split(';')
        .map(|part| Ok(parse_poly(part, fld)?))
        .collect()
}

fn uufd<F: Factorable>(fld: F, text: &str, first: &str, second: &str, stdin: &mut dyn Read) -> Run {
    let f = parse_poly(&read_text(text, stdin)?, &fld)?;
    let same = uufd_check(&f, &factor_list(&fld, first)?, &factor_list(&fld, second)?)?;
    let mut r = Report::default();
    r.put("equivalent", same);
    Ok((r, predicate(same)))
}
