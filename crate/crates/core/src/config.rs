//! Centralized numerical tolerances.

/// Tolerances used across the crate. Unless stated otherwise at the call
/// site, every check is relative to the Frobenius norm of the operand
/// (guarded below 1 by `max(1, ||.||)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Structural validation: projection, tangency and orthogonality defects.
    pub validation: f64,
    /// Agreement between a closed form and its finite-difference oracle.
    pub oracle: f64,
    /// Off-diagonal convergence threshold of the Jacobi eigensolver.
    pub eigensolver: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            validation: 1e-9,
            oracle: 1e-6,
            eigensolver: 1e-12,
        }
    }
}

impl Tolerances {
    /// Default tolerances with the validation threshold replaced.
    pub fn with_validation(validation: f64) -> Self {
        Self {
            validation,
            ..Self::default()
        }
    }
}
