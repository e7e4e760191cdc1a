//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A grid or step size is too coarse for the requested evaluation.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// A Fock-space cutoff is too small for the requested state or operator.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// Adaptive integration stopped before reaching the requested tolerance.
    /// The best available estimate is carried along so callers can report it.
    #[error(
        "quadrature did not converge: value {value:e}, error estimate {error_estimate:e} after {evaluations} evaluations"
    )]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: u64,
    },

    /// An integrand or worldline produced NaN or infinity.
    #[error("evaluation produced a non-finite value at {abscissa:e}")]
    NonFiniteEvaluation { abscissa: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
