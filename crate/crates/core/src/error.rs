//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type. Pipeline stages map each variant to a distinct
/// diagnostics code in reports (see [`Error::code`]).
#[derive(Error, Debug, Clone)]
pub enum Error {
    #[error("precondition violation: {0}")]
    Precondition(String),

    #[error("ring {ring} is not supported by {op}")]
    UnsupportedRing { op: &'static str, ring: String },

    #[error("complex too large: {generators} generators in degree {degree} (limit {limit})")]
    SizeLimit {
        degree: usize,
        generators: usize,
        limit: usize,
    },

    #[error("index pair construction violates {rule} at slice {slice}, cube {cube}")]
    IrregularConstruction {
        rule: &'static str,
        slice: usize,
        cube: u32,
    },

    #[error("slice inclusion is not an isomorphism in degree {degree} (rank defect {defect})")]
    NonIsomorphicInclusion { degree: usize, defect: usize },

    #[error("transition system does not stabilize over the window; rank history: {history:?}")]
    NotStabilized { history: Vec<Vec<usize>> },

    #[error("no connecting path satisfies the witness constraints")]
    NoConnection,

    #[error("long exact sequence fails at node {node}, degree {degree}")]
    ExactnessFailure { node: usize, degree: usize },

    #[error("invalid configuration: {0:?}")]
    Config(Vec<String>),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable diagnostics code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Precondition(_) => "precondition_violation",
            Error::UnsupportedRing { .. } => "unsupported_ring",
            Error::SizeLimit { .. } => "size_limit",
            Error::IrregularConstruction { .. } => "irregular_construction",
            Error::NonIsomorphicInclusion { .. } => "non_isomorphic_inclusion",
            Error::NotStabilized { .. } => "not_stabilized",
            Error::NoConnection => "no_connection",
            Error::ExactnessFailure { .. } => "exactness_failure",
            Error::Config(_) => "config_error",
            Error::Io(_) => "io_error",
        }
    }

    /// Hard errors abort a run (exit code 1); soft errors are recorded as
    /// per-stage diagnostics and the remaining stages are skipped.
    pub fn is_hard(&self) -> bool {
        matches!(
            self,
            Error::ExactnessFailure { .. } | Error::Io(_) | Error::Config(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
