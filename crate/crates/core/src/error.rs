use thiserror::Error;

/// Errors raised by the numerical toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EurError {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("eigenvalue {0:e} is below the positivity threshold")]
    Positivity(f64),

    #[error("invalid density operator: {0}")]
    InvalidState(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EurError>;
