use thiserror::Error;

/// Every failure the engines can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCount(usize, usize),
    #[error("series division needs an invertible constant term")]
    NonUnit,
    #[error("invalid orientation sequence: {0}")]
    BadSeq(String),
    #[error("generator does not exist for this object: {0}")]
    NoGenerator(String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("invalid diagram: {0}")]
    BadDiagram(String),
    #[error("omega_{0} is not available from this omega specification")]
    OmegaRange(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate eigenvalues: delta = {0} coincides with m or n")]
    Degenerate(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a 4-Young diagram: {0}")]
    NotFourYoung(String),
    #[error("spectrum is not rational: {0}")]
    NonRationalSpectrum(String),
}

pub type Result<T> = std::result::Result<T, Error>;
