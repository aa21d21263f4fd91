use thiserror::Error;

/// Errors shared across the numeric modules.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quadrature did not converge: best estimate {best}, achieved relative error {achieved:.3e}, requested {requested:.3e}")]
    QuadratureNonConvergence {
        best: f64,
        achieved: f64,
        requested: f64,
    },

    #[error("root finding for {what} did not converge to {tol:.1e} (residual {residual:.3e})")]
    RootFinding {
        what: &'static str,
        tol: f64,
        residual: f64,
    },

    #[error("optimizer did not converge after {iterations} iterations (best objective {best})")]
    OptimizerNonConvergence { iterations: usize, best: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
