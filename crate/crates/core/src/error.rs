//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("mesh parse error: {0}")]
    MeshParse(String),

    #[error("mask produced an empty mesh")]
    EmptyMesh,

    #[error("degenerate measure: total mass on the mesh is zero")]
    DegenerateMeasure,

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("degenerate factor field: zero weighted Frobenius norm")]
    DegenerateFactor,

    #[error("degenerate vector: zero M-norm after projecting out the constant mode")]
    DegenerateVector,

    #[error("eigensolver did not converge: residual {residual:.3e} after {iterations} iterations")]
    EigenNoConvergence { residual: f64, iterations: usize },

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("optimizer diverged at iteration {iteration}: non-finite update (try a smaller step size)")]
    Divergence { iteration: usize },

    #[error("point outside the support of the density")]
    OutsideSupport,

    #[error("covariance matrix is singular")]
    SingularCovariance,

    #[error("chain trace too short: {0} steps")]
    TraceTooShort(usize),

    #[error("non-finite chain position at step {step}")]
    NonFinitePosition { step: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
