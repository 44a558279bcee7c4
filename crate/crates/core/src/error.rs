use serde::Serialize;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid input `{field}`: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("unsupported potential variant for this operation: {0}")]
    UnsupportedVariant(String),

    #[error("dimension {dim} exceeds the dense-solver cap {cap}")]
    OverCap { dim: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{solver} did not converge after {iterations} iterations (last residual {last_residual:.3e})")]
    NonConvergence {
        solver: &'static str,
        iterations: usize,
        last_residual: f64,
        /// Largest unconverged residual recorded at each iteration.
        history: Vec<f64>,
    },

    #[error("{solver} broke down: {reason}")]
    Breakdown { solver: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }

    /// True for failures of an iterative solver, as opposed to bad input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Breakdown { .. })
    }
}
