use thiserror::Error;

/// Errors raised by the solver, the special functions and the oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("energy {energy} lies outside the bound-state window |E| < {mu}")]
    OutOfBoundWindow { energy: f64, mu: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no real angular momentum: discriminant {discriminant} < 0")]
    NoRealAngularMomentum { discriminant: f64 },

    #[error("negative discriminant {radicand} in the energy condition")]
    NegativeDiscriminant { radicand: f64 },

    #[error("no bound state: energy condition has no sign change in the window")]
    NoBoundState,

    #[error("no convergence: {0}")]
    NonConvergence(String),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag, used as the `status` column of tabular output.
    pub fn status(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::OutOfBoundWindow { .. } => "out_of_bound_window",
            Error::Domain(_) => "domain_error",
            Error::NoRealAngularMomentum { .. } => "no_real_angular_momentum",
            Error::NegativeDiscriminant { .. } => "negative_discriminant",
            Error::NoBoundState => "no_bound_state",
            Error::NonConvergence(_) => "non_convergence",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
