use thiserror::Error;

/// Errors raised by the QoE model, its numerical kernels and data ingestion.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QoeError {
    #[error("invalid rating scale: {0}")]
    InvalidScale(String),

    #[error("{what} = {value} is outside its domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid probability mass function: {0}")]
    InvalidPmf(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("SOS parameter theta = {0} must lie strictly inside (0, 1)")]
    InvalidTheta(f64),

    #[error("condition has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no rating distribution is known for condition {0:?}")]
    UnknownCondition(Vec<f64>),

    #[error("continuous-mode metrics require a continuous CDF")]
    MissingContinuousCdf,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate}, error bound {error_bound})"
    )]
    QuadratureNotConverged {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("unsupported combination: {0}")]
    Unsupported(String),
}

impl QoeError {
    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        QoeError::Domain {
            what,
            value,
            expected,
        }
    }

    /// True when the failure is a numerical one (convergence or non-finite arithmetic),
    /// as opposed to a malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            QoeError::NonFiniteIntegrand { .. }
                | QoeError::QuadratureNotConverged { .. }
                | QoeError::NoConvergence(_)
        )
    }
}

pub type Result<T, E = QoeError> = std::result::Result<T, E>;
