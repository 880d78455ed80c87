use crate::rational::ReducedRational;
use thiserror::Error;

/// Errors raised by the library. Every operation returns `Result<_, Error>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated a precondition (zero denominator, non-prime modulus, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The element does not belong to the monoid.
    #[error("{0} is not an element of the monoid")]
    NotMember(ReducedRational),
    /// The operation has no algorithm for this monoid family.
    #[error("operation not supported for monoid family {0}")]
    UnsupportedFamily(&'static str),
    /// The monoid is required to be root-closed (or otherwise restricted).
    #[error("unsupported monoid: {0}")]
    UnsupportedMonoid(String),
    /// The operation is only defined over a particular coefficient field.
    #[error("unsupported coefficient field: {0}")]
    UnsupportedField(String),
    /// The monoid has no atoms, so factorizations do not exist.
    #[error("the monoid has no atoms")]
    NoAtoms,
    /// The monoid is trivial ({0}) and the operation needs a nontrivial one.
    #[error("the trivial monoid is not allowed here")]
    TrivialMonoid,
    /// A polynomial exponent is outside the exponent monoid.
    #[error("exponent {0} is not in the monoid")]
    ExponentNotInMonoid(ReducedRational),
    /// A size guard (degree cap, search cap) was hit.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
