//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("least-squares system inconsistent: residual {residual:e} exceeds threshold {threshold:e}")]
    Inconsistent { residual: f64, threshold: f64 },
    #[error("empty subspace rejected: {0}")]
    EmptySubspace(String),
    #[error("all compression retries produced inconsistent candidate sets; raise the tolerance")]
    CompressionFailure,
    #[error("product vectors in D do not form a subspace")]
    NotAFace,
    #[error("D is completely entangled: product part is zero, decomposition trivial (D2 = D)")]
    EmptyProductPart,
    #[error("subspace is not completely separable: contains a rank-2 element")]
    NotSeparable,
    #[error("span did not close after {budget} samples (numerical degeneracy)")]
    BudgetExhausted { budget: usize },
    #[error("classifier verdict is not Exposed; no exposing witness exists")]
    NotExposed,
    #[error("dual-face verification failed: {0}")]
    VerificationFailed(String),
    #[error("no qualifying kernel product vector")]
    NoKernelPv,
    #[error("peel search failed: {0}")]
    SearchFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
