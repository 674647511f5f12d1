//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the numerical kernels and the command-line layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoulombError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in `{param}`: {msg}")]
    Domain { param: &'static str, msg: String },

    /// A power series or expansion was asked to work outside its reliable regime.
    #[error("regime error: {0}")]
    Regime(String),

    /// An iterative procedure or quadrature did not reach the requested tolerance.
    #[error("no convergence: {msg} (achieved {achieved:.3e})")]
    Convergence { msg: String, achieved: f64 },

    /// A value overflows `f64`; the scaled representation is carried along.
    #[error("overflow: {msg}")]
    Overflow { msg: String, log_scale: f64 },

    /// A grid is too coarse for the oscillation it has to resolve.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Boundary reflection detected by the time-stepping oracle.
    #[error("reflection contamination: probe value {probe:.3e} exceeds {limit:.1e}; enlarge R_max")]
    Reflection { probe: f64, limit: f64 },

    /// Malformed input data (profile files, command-line values).
    #[error("input error: {0}")]
    Input(String),
}

impl CoulombError {
    pub(crate) fn domain(param: &'static str, msg: impl Into<String>) -> Self {
        CoulombError::Domain { param, msg: msg.into() }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CoulombError>;
