//! Metric geometry of the embedded Grassmannian: the canonical connection,
//! curvature tensors, closed-form geodesics, point symmetries, the
//! tautological bundle, and parallel transport.
//!
//! The canonical connection has second fundamental form
//! `theta(eta, alpha) = (Id - 2 xi) eta alpha + alpha eta (Id - 2 xi)`,
//! normal-valued and symmetric in its arguments; in finite dimension it is
//! the Levi-Civita connection of the Hilbert-Schmidt metric. Geodesics admit
//! the closed form
//! `f(t) = (Id + (2 xi - Id) cos(2 t eta) + sin(2 t eta)) / 2`,
//! and reflection through a point is a geodesic-reversing isometry, so the
//! manifold is a symmetric space.

use super::{frame_from_point, GrassmannPoint, TangentVector};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numkernel::{hs_inner, matrix_trig, Field, Matrix};

/// Second fundamental form of the canonical connection on raw matrices:
/// `(Id - 2 xi) w u + u w (Id - 2 xi)` where `xi` is the base projection.
///
/// The first slot is the vector being differentiated, the second the
/// direction; on tangent pairs the form is symmetric and normal-valued.
pub fn connection_form(base: &Matrix, w: &Matrix, u: &Matrix) -> Matrix {
    let id = Matrix::identity(base.rows(), base.field());
    let refl = &id - &base.scale(2.0);
    &(&(&refl * w) * u) + &(&(u * w) * &refl)
}

/// Canonical connection evaluated on two tangent vectors at the same point.
pub fn connection(eta: &TangentVector, alpha: &TangentVector) -> Result<Matrix> {
    eta.same_base(alpha)?;
    Ok(connection_form(
        eta.base().matrix(),
        eta.matrix(),
        alpha.matrix(),
    ))
}

/// Curvature tensor of the canonical connection:
/// `R(alpha, beta, eta) = (eta alpha beta - eta beta alpha) + (beta alpha eta - alpha beta eta)`.
///
/// Evaluating both differences before the final sum makes the antisymmetry
/// in `(alpha, beta)` hold bit for bit.
pub fn curvature(
    alpha: &TangentVector,
    beta: &TangentVector,
    eta: &TangentVector,
    tol: &Tolerances,
) -> Result<TangentVector> {
    alpha.same_base(beta)?;
    alpha.same_base(eta)?;
    let (a, b, e) = (alpha.matrix(), beta.matrix(), eta.matrix());
    let first = &(&(e * a) * b) - &(&(e * b) * a);
    let second = &(&(b * a) * e) - &(&(a * b) * e);
    TangentVector::new(alpha.base(), &first + &second, tol)
}

/// Unnormalized and normalized sectional curvature of the plane spanned by
/// two tangent vectors.
#[derive(Debug, Clone, Copy)]
pub struct SectionalCurvature {
    /// `<R(alpha, beta, alpha), beta> = 2<ab, ab> - 2<ab, ba>`; nonnegative,
    /// zero exactly when the pair commutes.
    pub riem: f64,
    /// Gram determinant `|a|^2 |b|^2 - <a,b>^2` of the spanning pair.
    pub gram: f64,
    /// `riem / gram`; `None` when the plane is degenerate (gram <= 1e-12).
    pub normalized: Option<f64>,
}

pub fn sectional(alpha: &TangentVector, beta: &TangentVector) -> Result<SectionalCurvature> {
    alpha.same_base(beta)?;
    let (a, b) = (alpha.matrix(), beta.matrix());
    let ab = a * b;
    let ba = b * a;
    let riem = 2.0 * (ab.dot(&ab) - ab.dot(&ba));
    let gram = a.dot(a) * b.dot(b) - a.dot(b).powi(2);
    let normalized = (gram > 1e-12).then(|| riem / gram);
    Ok(SectionalCurvature {
        riem,
        gram,
        normalized,
    })
}

/// Closed-form Ricci curvature `(N - 2)/2 <alpha, beta>`. Real field only;
/// for the complex Grassmannian use [`ricci_trace`] and report the measured
/// proportionality constant instead.
pub fn ricci(alpha: &TangentVector, beta: &TangentVector) -> Result<f64> {
    alpha.same_base(beta)?;
    if alpha.base().field() != Field::Real {
        return Err(Error::FieldMismatch(
            "closed-form Ricci curvature is only available over the real field".into(),
        ));
    }
    let n = alpha.base().size() as f64;
    Ok((n - 2.0) / 2.0 * alpha.matrix().dot(beta.matrix()))
}

/// Ricci curvature as the trace `sum_i <R(alpha, e_i, beta), e_i>` over an
/// orthonormal tangent basis. Works over both fields.
pub fn ricci_trace(
    alpha: &TangentVector,
    beta: &TangentVector,
    tol: &Tolerances,
) -> Result<f64> {
    alpha.same_base(beta)?;
    let basis = tangent_basis(alpha.base(), tol)?;
    let mut sum = 0.0;
    for e in &basis {
        let r = curvature(alpha, e, beta, tol)?;
        sum += hs_inner(r.matrix(), e.matrix())?;
    }
    Ok(sum)
}

/// Orthonormal basis of the tangent space at `xi`, built from frames of the
/// range and its complement: `(v u* + u v*)/sqrt(2)` for each frame column
/// pair, plus the same with `u` replaced by `i u` over the complex field.
pub fn tangent_basis(xi: &GrassmannPoint, tol: &Tolerances) -> Result<Vec<TangentVector>> {
    let f = frame_from_point(xi, tol)?;
    let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
    let mut basis = Vec::with_capacity(xi.manifold_dim());
    for j in 0..f.rank() {
        let u = f.frame().column(j);
        for i in 0..(xi.size() - f.rank()) {
            let v = f.complement().column(i);
            let vu = &v * &u.adjoint();
            let e = (&vu + &vu.adjoint()).scale(inv_sqrt2);
            basis.push(TangentVector::new(xi, e, tol)?);
            if xi.field() == Field::Complex {
                let ivu = vu.i_times();
                let e2 = (&ivu + &ivu.adjoint()).scale(inv_sqrt2);
                basis.push(TangentVector::new(xi, e2, tol)?);
            }
        }
    }
    Ok(basis)
}

/// Point and velocity of the geodesic with initial data `(xi, eta)`, sharing
/// one trigonometric eigendecomposition:
/// `f(t) = (Id + (2 xi - Id) cos(2 t eta) + sin(2 t eta)) / 2`,
/// `f'(t) = (cos(2 t eta) - (2 xi - Id) sin(2 t eta)) eta`.
pub fn geodesic_pair(
    eta: &TangentVector,
    t: f64,
    tol: &Tolerances,
) -> Result<(GrassmannPoint, TangentVector)> {
    let base = eta.base();
    let (cos2, sin2) = matrix_trig(eta.matrix(), 2.0 * t, tol)?;
    let refl = base.reflection();
    let id = Matrix::identity(base.size(), base.field());
    let point_mat = (&(&id + &(&refl * &cos2)) + &sin2).scale(0.5);
    let point = GrassmannPoint::new(point_mat, tol)?;
    let velocity_mat = &(&cos2 - &(&refl * &sin2)) * eta.matrix();
    let velocity = TangentVector::new(&point, velocity_mat, tol)?;
    Ok((point, velocity))
}

/// The geodesic point `f(t)`.
pub fn geodesic(eta: &TangentVector, t: f64, tol: &Tolerances) -> Result<GrassmannPoint> {
    Ok(geodesic_pair(eta, t, tol)?.0)
}

/// The geodesic velocity `f'(t)`, anchored at `f(t)`.
pub fn geodesic_velocity(eta: &TangentVector, t: f64, tol: &Tolerances) -> Result<TangentVector> {
    Ok(geodesic_pair(eta, t, tol)?.1)
}

/// Reflection of `xi` through the `pole`: `(Id - 2 pole) xi (Id - 2 pole)`.
/// Fixes the pole, is an involution, and reverses geodesics through the
/// pole.
pub fn symmetry(
    pole: &GrassmannPoint,
    xi: &GrassmannPoint,
    tol: &Tolerances,
) -> Result<GrassmannPoint> {
    if pole.matrix().shape() != xi.matrix().shape() || pole.field() != xi.field() {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{} {}", pole.size(), pole.size(), pole.field()),
            got: format!("{}x{} {}", xi.size(), xi.size(), xi.field()),
        });
    }
    let refl = pole.reflection().neg();
    GrassmannPoint::new(&(&refl * xi.matrix()) * &refl, tol)
}

/// Metric connection of the tautological bundle applied to a fibre vector:
/// differentiating a section along `eta` corrects by `eta w`.
pub fn tauto_connection(
    eta: &TangentVector,
    w: &Matrix,
    tol: &Tolerances,
) -> Result<Matrix> {
    check_fibre(eta.base(), w, tol)?;
    Ok(eta.matrix() * w)
}

/// Curvature of the tautological bundle on a fibre vector:
/// `beta(alpha(w)) - alpha(beta(w))`, again a fibre vector.
pub fn tauto_curvature(
    alpha: &TangentVector,
    beta: &TangentVector,
    w: &Matrix,
    tol: &Tolerances,
) -> Result<Matrix> {
    alpha.same_base(beta)?;
    check_fibre(alpha.base(), w, tol)?;
    Ok(&(beta.matrix() * &(alpha.matrix() * w)) - &(alpha.matrix() * &(beta.matrix() * w)))
}

fn check_fibre(xi: &GrassmannPoint, w: &Matrix, tol: &Tolerances) -> Result<()> {
    if w.rows() != xi.size() || w.cols() != 1 || w.field() != xi.field() {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x1 {}", xi.size(), xi.field()),
            got: format!("{}x{} {}", w.rows(), w.cols(), w.field()),
        });
    }
    let defect = (&(xi.matrix() * w) - w).frobenius();
    if defect > tol.validation * w.frobenius().max(1.0) {
        return Err(Error::NotInFibre { defect });
    }
    Ok(())
}

/// Parallel transport of `w0` along the geodesic with initial velocity
/// `eta`, by fourth-order Runge-Kutta integration of
/// `W'(s) = theta_{f(s)}(W, f'(s))` with tangent re-projection at `f(s)`
/// after every step. A metric connection, so the transported norm is
/// conserved; the velocity field itself transports onto `f'(t)`.
pub fn parallel_transport(
    eta: &TangentVector,
    w0: &TangentVector,
    t: f64,
    steps: usize,
    tol: &Tolerances,
) -> Result<TangentVector> {
    eta.same_base(w0)?;
    if steps < 1 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let h = t / steps as f64;
    let mut w = w0.matrix().clone();
    for k in 0..steps {
        let s = k as f64 * h;
        let (p0, v0) = geodesic_pair(eta, s, tol)?;
        let (p_half, v_half) = geodesic_pair(eta, s + 0.5 * h, tol)?;
        let (p1, v1) = geodesic_pair(eta, s + h, tol)?;

        let k1 = connection_form(p0.matrix(), &w, v0.matrix());
        let k2 = connection_form(p_half.matrix(), &(&w + &k1.scale(0.5 * h)), v_half.matrix());
        let k3 = connection_form(p_half.matrix(), &(&w + &k2.scale(0.5 * h)), v_half.matrix());
        let k4 = connection_form(p1.matrix(), &(&w + &k3.scale(h)), v1.matrix());

        let incr = &(&k1 + &k4) + &(&k2 + &k3).scale(2.0);
        w = &w + &incr.scale(h / 6.0);
        w = p1.tangent_project_matrix(&w.symmetrize());
    }
    let end = geodesic(eta, t, tol)?;
    TangentVector::new(&end, w, tol)
}
