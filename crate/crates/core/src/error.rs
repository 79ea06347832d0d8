use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at {line}:{column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("exponent overflow (limit {limit})")]
    ExponentOverflow { limit: u32 },
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("expected a homogeneous ideal: {0}")]
    NotHomogeneous(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("Groebner step budget of {budget} reductions exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("{0}")]
    EmptyOrImproper(String),
    #[error("prime {p} too small for randomized computation (need at least {min})")]
    PrimeTooSmall { p: u32, min: u32 },
    #[error("independent random trials disagree: {0}")]
    RandomnessDisagreement(String),
    #[error("interpolation holdout mismatch: {0}")]
    HoldoutMismatch(String),
    #[error("class has nonzero coefficient below grading offset {offset}")]
    BelowOffset { offset: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid complete intersection: {0}")]
    InvalidCompleteIntersection(String),
    #[error("too many hypersurfaces for inclusion-exclusion: {0} (limit 4)")]
    CombinatorialLimit(usize),
    #[error("scheme verification failed: {0}")]
    VerificationFailed(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Error raised from a position inside a single-line input.
    pub(crate) fn parse_at(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Shift a single-line diagnostic onto a line of a larger file.
    #[cfg(feature = "cli")]
    pub(crate) fn relocate(self, line: usize, column_offset: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column: column + column_offset,
                message,
            },
            Error::UnknownVariable { name, column, .. } => Error::UnknownVariable {
                name,
                line,
                column: column + column_offset,
            },
            other => other,
        }
    }

    /// True for failures caused by the resource budget or by randomness, as
    /// opposed to malformed input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::RandomnessDisagreement(_)
                | Error::HoldoutMismatch(_)
                | Error::NotZeroDimensional
        )
    }
}
