use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates a type invariant. `invariant` names it.
    #[error("invalid parameter: {invariant} (got {value})")]
    InvalidParameter { invariant: &'static str, value: String },

    /// The input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An intermediate exponential left the floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    NonConvergence {
        subdivisions: usize,
        estimate: f64,
        error: f64,
    },

    #[error("non-finite value at {0}")]
    NonFinite(String),
}

impl Error {
    pub(crate) fn invalid(invariant: &'static str, value: impl std::fmt::Display) -> Self {
        Error::InvalidParameter {
            invariant,
            value: value.to_string(),
        }
    }
}
