use thiserror::Error;

/// Library-wide error type.
///
/// Variants map onto the CLI exit codes: everything through
/// [`Error::Argument`] is a validation failure (exit 2), the rest are
/// numeric/convergence failures (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters outside the regime a formula is valid in.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// A state object violates its structural invariants.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Operands with incompatible shapes.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Malformed arguments (empty lists, bad grids, unparsable files).
    #[error("argument error: {0}")]
    Argument(String),

    /// Fock-space truncation discarded more probability than budgeted.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// An iterative routine failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A quadrature grid too coarse for the requested accuracy.
    #[error("quadrature error: {0}")]
    Quadrature(String),
}

impl Error {
    /// True for errors that indicate bad inputs rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::UnsupportedRegime(_)
                | Error::InvalidState(_)
                | Error::DimensionMismatch(_)
                | Error::Argument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
