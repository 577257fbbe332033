use thiserror::Error;

/// Errors produced by the solvers and the weak-form machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inadmissible gas state: {0}")]
    InadmissibleState(String),

    #[error("outside solution domain: {0}")]
    Domain(String),

    /// A quadrature or root finder stopped short of the requested accuracy.
    /// `achieved` is the error estimate it could certify.
    #[error("numerical failure in {what}: achieved {achieved:.3e}, required {required:.3e}")]
    Numerical {
        what: String,
        achieved: f64,
        required: f64,
    },

    /// An internal invariant that should hold for all admissible inputs was
    /// violated; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
