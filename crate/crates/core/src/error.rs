use thiserror::Error;

use crate::algebra::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid partial algebra:\n{0}")]
    Invalid(ValidationReport),

    #[error("degenerate signature {0}: no join, minus or meet symbol")]
    DegenerateSignature(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("not a partial-algebra congruence: {0}")]
    NotCongruence(String),

    #[error("cannot detotalise: {0}")]
    Detotalise(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("minus is not single-valued under (abc): {a} - {b} could be {c} or {c2}")]
    NonUniqueMinus {
        a: String,
        b: String,
        c: String,
        c2: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} too large: {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("axioms violated: {0}")]
    AxiomsViolated(String),

    #[error("formula error: {0}")]
    Formula(String),

    #[error("inconclusive: {what} exceeded the cap of {cap}")]
    ResourceCap { what: &'static str, cap: usize },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
