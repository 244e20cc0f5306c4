use thiserror::Error;

use crate::algebra::Rat;

/// How a failure should be reported to a caller that only sees a status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The mathematics says no: degenerate fiber, non-terminating series, bad input map.
    Domain,
    /// A degree or iteration bound ran out before an answer was found.
    Inconclusive,
    /// Malformed input text or an invalid request.
    Usage,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { pos: usize, name: String },

    #[error("exponent at byte {pos} is not a non-negative integer literal")]
    BadExponent { pos: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("operation `{0}` requires a free polynomial ring (no defining relation)")]
    RelationNotSupported(&'static str),

    #[error("derivation does not induce a derivation on the quotient: D(P) is not divisible by P")]
    NotInducedOnQuotient,

    #[error("map does not induce an endomorphism of the quotient: P(images) is not in (P)")]
    AutoNotInducedOnQuotient,

    #[error("nilpotency certificate is invalid for variable `{0}`")]
    InvalidCertificate(String),

    #[error("log series did not terminate within {max_iter} iterations on `{var}`; the map is not visibly unipotent")]
    NonTerminatingSeries { var: String, max_iter: usize },

    #[error("Jacobian determinant is not a nonzero constant: {0}")]
    NonConstantJacobian(String),

    #[error("bound exhausted at stage `{stage}` (degree bound {bound}): {detail}")]
    BoundExhausted {
        stage: &'static str,
        bound: usize,
        detail: String,
    },

    #[error("degenerate fiber at alpha = {alpha}: induced derivations are linearly dependent")]
    DegenerateFiber { alpha: Rat },

    #[error("unsupported fiber: {0}")]
    UnsupportedFiber(String),

    #[error("empty fiber at alpha = {alpha}: the fiber ring is zero")]
    EmptyFiber { alpha: Rat },

    #[error("triangular basis check failed: {0}")]
    NotTriangular(String),

    #[error("invariants up to degree {bound} are not generated by a single element: {detail}")]
    NotMonogenic { bound: usize, detail: String },

    #[error("common kernel is not the constants up to degree {bound} (found {witness}); wrong dimension count")]
    NonconstantKernel { bound: usize, witness: String },

    #[error("some q is zero; the preslice stage failed upstream")]
    ZeroGenerator,

    #[error("session line {line}: {msg}")]
    Session { line: usize, msg: String },

    #[error("no derivation, map or polynomial named `{0}` in the session")]
    UnknownName(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Syntax { .. }
            | UnknownIdentifier { .. }
            | BadExponent { .. }
            | UnknownVariable(_)
            | InvalidRing(_)
            | SizeMismatch { .. }
            | RingMismatch
            | RelationNotSupported(_)
            | UnsupportedFiber(_)
            | Session { .. }
            | UnknownName(_)
            | Invalid(_) => ErrorClass::Usage,
            BoundExhausted { .. } => ErrorClass::Inconclusive,
            NotInducedOnQuotient
            | AutoNotInducedOnQuotient
            | InvalidCertificate(_)
            | NonTerminatingSeries { .. }
            | NonConstantJacobian(_)
            | DegenerateFiber { .. }
            | EmptyFiber { .. }
            | NotTriangular(_)
            | NotMonogenic { .. }
            | NonconstantKernel { .. }
            | ZeroGenerator => ErrorClass::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
