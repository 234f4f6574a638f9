use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library.
///
/// Variants are grouped by how a caller should react: configuration and
/// parameter problems are the caller's fault, caps and unsupported
/// operations are refusals, contract violations indicate a broken invariant.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ground-size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("ratio undefined: optimum is zero")]
    UndefinedRatio,

    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SizeMismatch { .. } => "size_mismatch",
            Error::Config(_) => "config",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Unsupported(_) => "unsupported",
            Error::ContractViolation(_) => "contract_violation",
            Error::UndefinedRatio => "undefined_ratio",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "probability p = {p} must lie strictly between 0 and 1"
        )))
    }
}
