use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not self-adjoint (defect {defect:.3e}, tolerance {tol:.3e})")]
    NotSelfAdjoint { defect: f64, tol: f64 },

    #[error("eigensolver did not converge in {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    EigNoConvergence { sweeps: usize, residual: f64 },

    #[error("not an orthogonal projection: {0}")]
    NotProjection(String),

    #[error("projection spectrum is not within {max_dist} of {{0,1}}: eigenvalue {eigenvalue}")]
    SpectrumNotBinary { eigenvalue: f64, max_dist: f64 },

    #[error("not a tangent vector: {0}")]
    NotTangent(String),

    #[error("not an orthogonal/unitary matrix (defect {defect:.3e})")]
    NotOrthogonal { defect: f64 },

    #[error("point is outside the chart domain (smallest singular value {sigma_min:.3e})")]
    NotInChartDomain { sigma_min: f64 },

    #[error("vector is not in the fibre of the base point (defect {defect:.3e})")]
    NotInFibre { defect: f64 },

    #[error("vector is not vertical for the submersion (defect {defect:.3e})")]
    NotVertical { defect: f64 },

    #[error("tangent vectors are anchored at different base points")]
    MismatchedBasePoints,

    #[error("matrix is singular (pivot {pivot:.3e})")]
    Singular { pivot: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
