use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown {kind} `{name}` in {context}")]
    Lookup {
        kind: &'static str,
        name: String,
        context: String,
    },
    #[error("cannot compose {g} after {f}: codomain of {f} is not the domain of {g}")]
    NotComposable { g: String, f: String },
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("het `{het}` has no factorization through the universal")]
    NotUniversal { het: String },
    #[error("het `{het}` factors through the universal in {} ways: {}", factors.len(), factors.join(", "))]
    NotUnique { het: String, factors: Vec<String> },
    #[error("{0}")]
    Invalid(ValidationReport),
    #[error("not a collage: {0}")]
    NotACollage(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<ValidationReport> for Error {
    fn from(r: ValidationReport) -> Self {
        Error::Invalid(r)
    }
}
