use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures reported by the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} did not converge (residual {residual:e})")]
    NonConvergence { what: String, residual: f64 },

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("degenerate combination: {0}")]
    Degenerate(String),

    #[error("near linear dependence at n = {n}: pivot norm {pivot:e}")]
    NearDependence { n: usize, pivot: f64 },

    #[error("kernel/non-kernel separation ambiguous: {0}")]
    AmbiguousKernel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn non_convergence(what: impl Into<String>, residual: f64) -> Self {
        Error::NonConvergence {
            what: what.into(),
            residual,
        }
    }

    /// True for errors caused by bad input rather than numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::Parse(_))
    }
}
