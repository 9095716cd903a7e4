use thiserror::Error;

/// Errors raised by the simulators and calculators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    /// A density-matrix or state-vector invariant failed.
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The adaptive integrator could not make progress.
    #[error("integration failed at t = {last_good_time:e} (step {step:e} below minimum)")]
    IntegrationFailure { last_good_time: f64, step: f64 },

    #[error("Fock truncation too small: tail probability {tail:e} beyond n = {n_max}")]
    Truncation { n_max: usize, tail: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IntegrationFailure { .. } | Error::Truncation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
