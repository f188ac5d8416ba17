use thiserror::Error;

use crate::exact::Scalar;

/// Domain errors raised by the library. Every variant has a stable machine code
/// (see [`Error::code`]) used by the CLI error object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace not contained in ambient space")]
    NotContained,
    #[error("lattice generators are not Q-linearly independent")]
    DependentGenerators,
    #[error("torsion present in lattice")]
    TorsionPresent,
    #[error("invalid {what}: {reasons:?}")]
    Invalid { what: &'static str, reasons: Vec<String> },
    #[error("structure is not special")]
    NotSpecial,
    #[error("Hom(M,Ga) nonzero")]
    NoUniversalExtension { witness: Vec<Scalar> },
    #[error("map not surjective: {0}")]
    NotSurjective(String),
    #[error("map not injective: {0}")]
    NotInjective(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotContained => "not_contained",
            Error::DependentGenerators => "dependent_generators",
            Error::TorsionPresent => "torsion_present",
            Error::Invalid { .. } => "invalid",
            Error::NotSpecial => "not_special",
            Error::NoUniversalExtension { .. } => "no_universal_extension",
            Error::NotSurjective(_) => "not_surjective",
            Error::NotInjective(_) => "not_injective",
            Error::Parse(_) => "parse",
        }
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn invalid(what: &'static str, reasons: Vec<String>) -> Self {
        Error::Invalid { what, reasons }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
