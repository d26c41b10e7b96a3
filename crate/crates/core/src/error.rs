use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed, inconsistent or out-of-domain input.
    Data,
    /// The problem is well posed but numerically ill-conditioned, or the data
    /// does not fit the model family.
    Conditioning,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error at {point}: {reason}")]
    Domain { point: Complex64, reason: String },

    #[error("boundary angle {theta} is singular: {reason}")]
    Singularity { theta: f64, reason: String },

    #[error("invalid data: {0}")]
    Data(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("zero or pole at {point} lies on the sampling circle of radius {rho}; deflate the trace first")]
    DeflationNeeded { rho: f64, point: Complex64 },

    #[error("vanishing order at {point} fits to {estimate:.3}, not an integer; sampling resolution too low")]
    ResolutionTooLow { point: Complex64, estimate: f64 },

    #[error("vanishing order slope {slope:.3} is not an integer: the segment likely carries a zero away from its midpoint; shrink the segment")]
    AmbiguousOrder { slope: f64 },

    #[error("polynomial fit residual {residual:.3e} exceeds {threshold:.3e}: raise the truncation order or shrink the segment")]
    FitResidual { residual: f64, threshold: f64 },

    #[error("coefficient system ill-conditioned at n = {indices:?} (|sin(n*alpha)| < {threshold:e})")]
    IllConditioned { indices: Vec<usize>, threshold: f64 },

    #[error("no model with at most {max_zeros} zeros fits: best residual {residual:.3e} >= tol {tol:.3e}")]
    ModelMismatch { max_zeros: usize, residual: f64, tol: f64 },

    #[error("divisor mismatch: {0}")]
    DivisorMismatch(String),

    #[error("G = c z^{m} F with |c| = {abs_c:.12}, |c| rho^m = {abs_c_rho_m:.12}: both must equal 1")]
    GaugeDichotomy {
        c: Complex64,
        m: i32,
        abs_c: f64,
        abs_c_rho_m: f64,
    },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::IllConditioned { .. } | Error::ModelMismatch { .. } | Error::FitResidual { .. } => {
                ErrorClass::Conditioning
            }
            _ => ErrorClass::Data,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Singularity { .. } => "singularity",
            Error::Data(_) => "data",
            Error::Inconsistent(_) => "inconsistent",
            Error::DeflationNeeded { .. } => "deflation_needed",
            Error::ResolutionTooLow { .. } => "resolution_too_low",
            Error::AmbiguousOrder { .. } => "ambiguous_order",
            Error::FitResidual { .. } => "fit_residual",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::ModelMismatch { .. } => "model_mismatch",
            Error::DivisorMismatch(_) => "divisor_mismatch",
            Error::GaugeDichotomy { .. } => "gauge_dichotomy",
        }
    }
}
