//! Hermitian eigendecomposition by cyclic Jacobi rotations, and matrix
//! trigonometric functions built on it.
//!
//! The solver handles real symmetric and complex Hermitian matrices with the
//! same sweep: each off-diagonal element is annihilated by a unitary plane
//! rotation whose phase absorbs the argument of the pivot entry. Quadratic
//! convergence makes the 100-sweep cap generous for the dense sizes this
//! crate targets (N <= 64).

use num_complex::Complex64;

use super::matrix::{Field, Matrix};
use crate::config::Tolerances;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Result of [`eig_hermitian`]: `a = Q diag(eigenvalues) Q*` with
/// `eigenvalues` ascending and `Q` having orthonormal columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
    /// Frobenius norm of `a Q - Q diag(eigenvalues)` against the
    /// symmetrized input.
    pub residual: f64,
}

/// Eigendecomposition of a self-adjoint matrix.
///
/// The input must be square and self-adjoint within `validation * ||a||_F`;
/// it is symmetrized as `(a + a*)/2` before iterating. Sweeps stop when the
/// off-diagonal Frobenius norm drops below `eigensolver * ||a||_F`.
pub fn eig_hermitian(a: &Matrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let norm_a = a.frobenius();
    let adjoint_defect = (a - &a.adjoint()).frobenius();
    // Guarded below 1 so near-zero matrices with machine-noise asymmetry
    // are not rejected on a vanishing relative scale.
    if adjoint_defect > tol.validation * norm_a.max(1.0) {
        return Err(Error::NotSelfAdjoint {
            defect: adjoint_defect,
            tol: tol.validation * norm_a.max(1.0),
        });
    }

    let n = a.rows();
    let sym = a.symmetrize();
    let mut work = sym.clone().to_complex();
    let mut q = Matrix::identity(n, Field::Complex);
    let threshold = tol.eigensolver * norm_a;

    let mut converged = n < 2;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&work) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for qi in (p + 1)..n {
                rotate(&mut work, &mut q, p, qi);
            }
        }
    }
    if !converged && off_diagonal_norm(&work) > threshold {
        return Err(Error::EigNoConvergence {
            sweeps: MAX_SWEEPS,
            residual: off_diagonal_norm(&work),
        });
    }

    // Ascending eigenvalue order, stable under ties.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| work.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = Matrix::from_fn_complex(n, n, |r, c| q.get(r, order[c]));
    let vectors = match a.field() {
        Field::Real => vectors.to_real(f64::INFINITY)?,
        Field::Complex => vectors,
    };

    let lambda = Matrix::diagonal(&eigenvalues);
    let lambda = match a.field() {
        Field::Real => lambda,
        Field::Complex => lambda.to_complex(),
    };
    let residual = (&(&sym * &vectors) - &(&vectors * &lambda)).frobenius();

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vectors,
        residual,
    })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a.get(r, c).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation annihilating the `(p, q)` entry, `p < q`.
///
/// For a pivot `z = |z| e^{i phi}` the unitary update is
/// `U = diag(1, e^{-i phi}) R(c, s)` with the classic symmetric Schur
/// rotation `R`; `U* A U` zeroes the pivot while `Q <- Q U` accumulates
/// eigenvectors.
fn rotate(a: &mut Matrix, q: &mut Matrix, p: usize, qi: usize) {
    let z = a.get(p, qi);
    let r = z.norm();
    if r == 0.0 {
        return;
    }
    let phase = z / r;
    let tau = (a.get(qi, qi).re - a.get(p, p).re) / (2.0 * r);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column space of U: col1 = (c, -s conj(phase)), col2 = (s, c conj(phase)).
    let u11 = Complex64::new(c, 0.0);
    let u12 = Complex64::new(s, 0.0);
    let u21 = -s * phase.conj();
    let u22 = c * phase.conj();

    let n = a.rows();
    // A <- A U
    for row in 0..n {
        let ap = a.get(row, p);
        let aq = a.get(row, qi);
        a.set(row, p, ap * u11 + aq * u21);
        a.set(row, qi, ap * u12 + aq * u22);
    }
    // A <- U* A
    for col in 0..n {
        let ap = a.get(p, col);
        let aq = a.get(qi, col);
        a.set(p, col, u11.conj() * ap + u21.conj() * aq);
        a.set(qi, col, u12.conj() * ap + u22.conj() * aq);
    }
    // Pin the annihilated pair and keep the diagonal exactly real.
    a.set(p, qi, Complex64::ZERO);
    a.set(qi, p, Complex64::ZERO);
    let dp = a.get(p, p);
    let dq = a.get(qi, qi);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(qi, qi, Complex64::new(dq.re, 0.0));
    // Q <- Q U
    for row in 0..n {
        let qp = q.get(row, p);
        let qq = q.get(row, qi);
        q.set(row, p, qp * u11 + qq * u21);
        q.set(row, qi, qp * u12 + qq * u22);
    }
}

/// `(cos(t a), sin(t a))` for self-adjoint `a`, via the eigendecomposition
/// `a = Q L Q*`: `f(a) = Q f(t L) Q*`.
pub fn matrix_trig(a: &Matrix, t: f64, tol: &Tolerances) -> Result<(Matrix, Matrix)> {
    let eig = eig_hermitian(a, tol)?;
    let q = &eig.eigenvectors;
    let qstar = q.adjoint();
    let apply = |f: fn(f64) -> f64| {
        let diag = Matrix::diagonal(&eig.eigenvalues.iter().map(|l| f(t * l)).collect::<Vec<_>>());
        let diag = match a.field() {
            Field::Real => diag,
            Field::Complex => diag.to_complex(),
        };
        &(q * &diag) * &qstar
    };
    Ok((apply(f64::cos), apply(f64::sin)))
}
