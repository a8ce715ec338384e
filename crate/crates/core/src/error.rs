use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("alpha must be >= -0.5 (got {0})")]
    InvalidOrder(f64),

    #[error("{what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("could not bracket zero #{index} of J_{order}")]
    ZeroBracket { order: f64, index: usize },

    #[error("zero #{index} of J_{order} has residual {residual:e}")]
    ZeroResidual { order: f64, index: usize, residual: f64 },

    #[error("matrix is not symmetric (max |A - A^T| = {0:e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("eigenpair residual {residual:e} exceeds tolerance {tolerance:e}")]
    EigenResidual { residual: f64, tolerance: f64 },

    #[error("eigenvalue #{index} = {value:e} lies outside [0, 1] beyond rounding")]
    EigenvalueRange { index: usize, value: f64 },
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { what, detail: detail.into() }
    }
}
