use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not flagged unitary")]
    NotFlaggedUnitary,

    #[error("operator is not unitary (max |U†U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("operator is not hermitian (max |H - H†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("qubit index {index} out of range for a {qubits}-qubit register")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("basis state {z} out of range for dimension {dim}")]
    BasisOutOfRange { z: usize, dim: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("path budget exceeded: {hadamards} branching gates (limit {limit})")]
    BudgetExceeded { hadamards: usize, limit: usize },

    #[error("eigendecomposition failed to converge")]
    EigenFailure,

    #[error("schedule integration failed at lambda = {lambda}")]
    StepFailure { lambda: f64 },

    #[error("norm drift {drift:e} exceeds tolerance; step size too coarse")]
    NormDrift { drift: f64 },

    #[error("grid too coarse: {reason}")]
    GridTooCoarse { reason: String },

    #[error("spin configuration is not periodic in the Trotter direction")]
    NonPeriodic,
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
