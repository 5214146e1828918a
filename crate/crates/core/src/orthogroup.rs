//! The orthogonal/unitary group as a matrix manifold and its submersion
//! onto the Grassmannian.
//!
//! Tangent vectors at `xi` are the matrices with `a* xi + xi* a = 0`; the
//! orthogonal projection onto them is `(lam - xi lam* xi)/2` and induces the
//! symmetric connection `theta(a, b) = -(b a* xi + xi a* b)/2`, the metric
//! one in finite dimension. Fixing a subspace with projection `pi`, the map
//! `Phi(xi) = xi pi xi*` sends the group onto the Grassmann manifold of
//! subspaces of the same dimension; it is a Riemannian submersion with
//! totally geodesic fibres, over the complex field as well (the unitary
//! group).

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannPoint, TangentVector};
use crate::numkernel::{eig_hermitian, Field, Matrix};

/// A point of the orthogonal (real) or unitary (complex) group.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthPoint {
    mat: Matrix,
}

impl OrthPoint {
    /// Validates `||m* m - Id|| <= tol.validation`.
    pub fn new(mat: Matrix, tol: &Tolerances) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let defect =
            (&(&mat.adjoint() * &mat) - &Matrix::identity(mat.rows(), mat.field())).frobenius();
        if defect > tol.validation {
            return Err(Error::NotOrthogonal { defect });
        }
        Ok(Self { mat })
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Self {
            mat: Matrix::identity(n, field),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn field(&self) -> Field {
        self.mat.field()
    }
}

/// `true` iff `a* xi + xi* a = 0` within `tol * max(1, ||a||)`.
pub fn o_is_tangent(xi: &OrthPoint, a: &Matrix, tol: f64) -> bool {
    if a.shape() != xi.mat.shape() || a.field() != xi.field() {
        return false;
    }
    let defect = (&(&a.adjoint() * &xi.mat) + &(&xi.mat.adjoint() * a)).frobenius();
    defect <= tol * a.frobenius().max(1.0)
}

/// Orthogonal projection onto the tangent space at `xi`:
/// `(lam - xi lam* xi)/2`.
pub fn o_project(xi: &OrthPoint, lam: &Matrix) -> Matrix {
    (lam - &(&(&xi.mat * &lam.adjoint()) * &xi.mat)).scale(0.5)
}

/// Second fundamental form of the group connection,
/// `theta(a, b) = -(b a* xi + xi a* b)/2`, on raw matrices.
pub fn o_connection_form(xi_mat: &Matrix, a: &Matrix, b: &Matrix) -> Matrix {
    let astar = a.adjoint();
    (&(&(b * &astar) * xi_mat) + &(&(xi_mat * &astar) * b)).scale(-0.5)
}

/// Group connection on two tangent vectors; symmetric in its arguments and
/// equal to the derivative of the tangent-projection family.
pub fn o_connection(xi: &OrthPoint, a: &Matrix, b: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    for v in [a, b] {
        if !o_is_tangent(xi, v, tol.validation) {
            return Err(Error::NotTangent(
                "a* xi + xi* a = 0 violated at the group point".into(),
            ));
        }
    }
    Ok(o_connection_form(&xi.mat, a, b))
}

/// The submersion data: the fixed projection `pi` whose subspace is carried
/// around by the group.
#[derive(Debug, Clone)]
pub struct SubmersionSetup {
    h_projection: GrassmannPoint,
}

impl SubmersionSetup {
    pub fn new(h_projection: GrassmannPoint) -> Self {
        Self { h_projection }
    }

    pub fn h_projection(&self) -> &GrassmannPoint {
        &self.h_projection
    }

    fn check_size(&self, xi: &OrthPoint) -> Result<()> {
        let pi = self.h_projection.matrix();
        if pi.shape() != xi.mat.shape() || pi.field() != xi.field() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{} {}", pi.rows(), pi.cols(), pi.field()),
                got: format!("{}x{} {}", xi.size(), xi.size(), xi.field()),
            });
        }
        Ok(())
    }
}

/// `Phi(xi) = xi pi xi*`, the projection onto the image of the fixed
/// subspace under `xi`.
pub fn submersion(
    setup: &SubmersionSetup,
    xi: &OrthPoint,
    tol: &Tolerances,
) -> Result<GrassmannPoint> {
    setup.check_size(xi)?;
    let pi = setup.h_projection.matrix();
    GrassmannPoint::new(&(&xi.mat * pi) * &xi.mat.adjoint(), tol)
}

/// Differential of the submersion, `D Phi (a) = a pi xi* + xi pi a*`,
/// anchored at `Phi(xi)`.
pub fn submersion_differential(
    setup: &SubmersionSetup,
    xi: &OrthPoint,
    a: &Matrix,
    tol: &Tolerances,
) -> Result<TangentVector> {
    setup.check_size(xi)?;
    if !o_is_tangent(xi, a, tol.validation) {
        return Err(Error::NotTangent(
            "a* xi + xi* a = 0 violated at the group point".into(),
        ));
    }
    let pi = setup.h_projection.matrix();
    let image = submersion(setup, xi, tol)?;
    let mat = &(&(a * pi) * &xi.mat.adjoint()) + &(&(&xi.mat * pi) * &a.adjoint());
    TangentVector::new(&image, mat, tol)
}

/// Adjoint of the differential, `D Phi* (beta) = 2 beta xi pi - beta xi`,
/// mapping tangents at `Phi(xi)` to horizontal tangents at `xi`. Inverts
/// the differential on its image: `D Phi (D Phi* beta) = beta`.
pub fn submersion_coadjoint(
    setup: &SubmersionSetup,
    xi: &OrthPoint,
    beta: &TangentVector,
    tol: &Tolerances,
) -> Result<Matrix> {
    setup.check_size(xi)?;
    let image = submersion(setup, xi, tol)?;
    if (beta.base().matrix() - image.matrix()).frobenius()
        > tol.validation * image.matrix().frobenius().max(1.0)
    {
        return Err(Error::MismatchedBasePoints);
    }
    let pi = setup.h_projection.matrix();
    let beta_xi = beta.matrix() * &xi.mat;
    Ok(&(&beta_xi * pi).scale(2.0) - &beta_xi)
}

/// Vertical component of a group tangent: `a - D Phi*(D Phi(a))`. The
/// horizontal projection `D Phi* D Phi` is idempotent and self-adjoint
/// because the submersion is Riemannian.
pub fn vertical_project(
    setup: &SubmersionSetup,
    xi: &OrthPoint,
    a: &Matrix,
    tol: &Tolerances,
) -> Result<Matrix> {
    let dphi = submersion_differential(setup, xi, a, tol)?;
    let horizontal = submersion_coadjoint(setup, xi, &dphi, tol)?;
    Ok(a - &horizontal)
}

/// Frobenius norm of the vertical-tangency identity
/// `a pi b* + b pi a* + lam pi xi* + xi pi lam*` with `lam = theta(a, b)`,
/// for a vertical pair `(a, b)`. Vanishing for all vertical pairs is what
/// makes the fibres totally geodesic.
pub fn fibre_geodesic_defect(
    setup: &SubmersionSetup,
    xi: &OrthPoint,
    a: &Matrix,
    b: &Matrix,
    tol: &Tolerances,
) -> Result<f64> {
    setup.check_size(xi)?;
    for v in [a, b] {
        let image = submersion_differential(setup, xi, v, tol)?;
        let defect = image.norm();
        if defect > tol.validation * v.frobenius().max(1.0) {
            return Err(Error::NotVertical { defect });
        }
    }
    let pi = setup.h_projection.matrix();
    let lam = o_connection_form(&xi.mat, a, b);
    let term = |x: &Matrix, y: &Matrix| &(&(x * pi) * &y.adjoint()) + &(&(y * pi) * &x.adjoint());
    let total = &term(a, b) + &term(&lam, &xi.mat);
    Ok(total.frobenius())
}

/// Random tangent vector at a group point: the tangent projection of a
/// Gaussian sample.
pub fn o_random_tangent(rng: &mut crate::numkernel::Rng, xi: &OrthPoint) -> Matrix {
    let g = crate::numkernel::random_gaussian(rng, xi.size(), xi.size(), xi.field());
    o_project(xi, &g)
}

/// Geodesic of the group connection by classic Runge-Kutta on
/// `x'' = theta_x(x', x')`, re-orthonormalizing the point through a polar
/// snap `x (x* x)^{-1/2}` and re-projecting the velocity after every step.
pub fn o_geodesic_rk4(
    xi: &OrthPoint,
    a: &Matrix,
    t: f64,
    steps: usize,
    tol: &Tolerances,
) -> Result<OrthPoint> {
    if steps < 1 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if !o_is_tangent(xi, a, tol.validation) {
        return Err(Error::NotTangent(
            "a* xi + xi* a = 0 violated at the group point".into(),
        ));
    }
    let h = t / steps as f64;
    let mut x = xi.mat.clone();
    let mut v = a.clone();
    for _ in 0..steps {
        let a1 = o_connection_form(&x, &v, &v);

        let x2 = &x + &v.scale(0.5 * h);
        let v2 = &v + &a1.scale(0.5 * h);
        let a2 = o_connection_form(&x2, &v2, &v2);

        let x3 = &x + &v2.scale(0.5 * h);
        let v3 = &v + &a2.scale(0.5 * h);
        let a3 = o_connection_form(&x3, &v3, &v3);

        let x4 = &x + &v3.scale(h);
        let v4 = &v + &a3.scale(h);
        let a4 = o_connection_form(&x4, &v4, &v4);

        let dx = &(&v + &v4) + &(&v2 + &v3).scale(2.0);
        let dv = &(&a1 + &a4) + &(&a2 + &a3).scale(2.0);
        x = &x + &dx.scale(h / 6.0);
        v = &v + &dv.scale(h / 6.0);

        x = polar_snap(&x, tol)?;
        let snapped = OrthPoint { mat: x.clone() };
        v = o_project(&snapped, &v);
    }
    OrthPoint::new(x, tol)
}

/// `x (x* x)^{-1/2}` through the Hermitian eigendecomposition of `x* x`.
fn polar_snap(x: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let gram = (&x.adjoint() * x).symmetrize();
    let eig = eig_hermitian(&gram, tol)?;
    let inv_sqrt: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| 1.0 / l.max(1e-300).sqrt())
        .collect();
    let d = Matrix::diagonal(&inv_sqrt);
    let d = match x.field() {
        Field::Real => d,
        Field::Complex => d.to_complex(),
    };
    let q = &eig.eigenvectors;
    Ok(x * &(&(q * &d) * &q.adjoint()))
}
