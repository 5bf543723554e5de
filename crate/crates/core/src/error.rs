use thiserror::Error;

/// Errors raised by the verification kernels.
///
/// Payloads are widened to `f64` so the error type does not depend on the
/// scalar the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HhError {
    #[error("invalid interval [{a}, {b}]: endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("integrand is not finite at x = {abscissa}")]
    NonFinite { abscissa: f64 },

    #[error(
        "quadrature did not converge: value {value}, error estimate {error_estimate} after {evaluations} evaluations"
    )]
    NotConverged {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("parameter error for {theorem}: {detail}")]
    Parameter { theorem: String, detail: String },
}

impl HhError {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        HhError::Domain {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HhError>;
