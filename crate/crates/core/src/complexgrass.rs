//! The complex Grassmannian: complex structure, Kähler checks, holomorphic
//! charts, and realification.
//!
//! Over a Hermitian space the Grassmannian of complex subspaces is a real
//! submanifold of the complex-linear operators, carrying the complex
//! structure `J(eta) = i eta (2 xi - Id)` on each tangent space. `J` squares
//! to minus the identity, is an isometry for the real Hilbert-Schmidt
//! product, and is parallel for the canonical connection; the graph charts
//! are holomorphic for it. Together these make the manifold Kähler, which
//! this module verifies through its defining components rather than a named
//! predicate.
//!
//! Realification fixes the convention `z = a + b i  ->  [[a, -b], [b, a]]`,
//! interleaved per coordinate, and is used to compare complex-arithmetic
//! evaluations with the same computations inside the real Grassmannian of
//! the doubled space.

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::grassmann::charts::chart_differential;
use crate::grassmann::geometry::{connection_form, geodesic};
use crate::grassmann::{GrassmannPoint, SubspaceFrame, TangentVector};
use crate::numkernel::{Field, Matrix};

fn require_complex(field: Field, what: &str) -> Result<()> {
    if field != Field::Complex {
        return Err(Error::FieldMismatch(format!(
            "{what} requires the complex field"
        )));
    }
    Ok(())
}

/// The complex structure `J(eta) = i eta (2 xi - Id)` on the tangent space
/// at a complex point. Squares to minus the identity and preserves the real
/// Hilbert-Schmidt product.
pub fn j_apply(eta: &TangentVector, tol: &Tolerances) -> Result<TangentVector> {
    require_complex(eta.base().field(), "the complex structure")?;
    let refl = eta.base().reflection();
    let mat = (eta.matrix() * &refl).i_times();
    TangentVector::new(eta.base(), mat, tol)
}

/// One recorded evaluation of the complex structure.
#[derive(Debug, Clone)]
pub struct ComplexStructureEval {
    pub base: GrassmannPoint,
    pub input: TangentVector,
    pub output: TangentVector,
}

impl ComplexStructureEval {
    pub fn new(eta: &TangentVector, tol: &Tolerances) -> Result<Self> {
        let output = j_apply(eta, tol)?;
        Ok(Self {
            base: eta.base().clone(),
            input: eta.clone(),
            output,
        })
    }
}

/// Frobenius norm of the covariant derivative of `J` evaluated on a pair of
/// tangent vectors:
/// `2 i beta alpha + i theta(beta, alpha) (2 xi - Id) - theta(J beta, alpha)`.
/// `J` is parallel, so the result vanishes to rounding.
pub fn nabla_j_defect(
    alpha: &TangentVector,
    beta: &TangentVector,
    tol: &Tolerances,
) -> Result<f64> {
    alpha.same_base(beta)?;
    require_complex(alpha.base().field(), "the parallelism check")?;
    let base = alpha.base().matrix();
    let refl = alpha.base().reflection();
    let first = (beta.matrix() * alpha.matrix()).i_times().scale(2.0);
    let second = (&connection_form(base, beta.matrix(), alpha.matrix()) * &refl).i_times();
    let j_beta = j_apply(beta, tol)?;
    let third = connection_form(base, j_beta.matrix(), alpha.matrix());
    Ok((&(&first + &second) - &third).frobenius())
}

/// Deviation of the chart differential from complex linearity:
/// `|| D psi (J eta) - i D psi (eta) ||`. Zero when the chart is
/// holomorphic for `J`.
pub fn holomorphic_chart_defect(
    f: &SubspaceFrame,
    xi: &GrassmannPoint,
    eta: &TangentVector,
    tol: &Tolerances,
) -> Result<f64> {
    require_complex(xi.field(), "the holomorphic chart check")?;
    let d_j = chart_differential(f, xi, &j_apply(eta, tol)?, tol)?;
    let d = chart_differential(f, xi, eta, tol)?;
    Ok((&d_j - &d.i_times()).frobenius())
}

/// Realification of a complex matrix: each entry `a + b i` becomes the
/// 2x2 block `[[a, -b], [b, a]]`, interleaved per coordinate.
pub fn realify(m: &Matrix) -> Result<Matrix> {
    require_complex(m.field(), "realification")?;
    let (rows, cols) = m.shape();
    Ok(Matrix::from_fn_real(2 * rows, 2 * cols, |r, c| {
        let z = m.get(r / 2, c / 2);
        match (r % 2, c % 2) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    }))
}

/// The realified multiplication-by-i operator on the doubled space.
pub fn multiplication_by_i(n: usize) -> Matrix {
    let i_id = Matrix::identity(n, Field::Complex).scale_complex(Complex64::I);
    realify(&i_id).expect("identity realifies")
}

/// Realified view of a complex point; a valid real point of doubled rank.
pub fn realify_point(xi: &GrassmannPoint, tol: &Tolerances) -> Result<GrassmannPoint> {
    require_complex(xi.field(), "realification")?;
    GrassmannPoint::new(realify(xi.matrix())?, tol)
}

/// Realified view of a complex tangent vector, anchored at the realified
/// base point.
pub fn realify_tangent(eta: &TangentVector, tol: &Tolerances) -> Result<TangentVector> {
    let base = realify_point(eta.base(), tol)?;
    TangentVector::new(&base, realify(eta.matrix())?, tol)
}

/// Discrepancies certifying that the complex Grassmannian sits totally
/// geodesically inside the real Grassmannian of the doubled space.
#[derive(Debug, Clone, Copy)]
pub struct TotallyGeodesicDefect {
    /// `|| realify(theta_C(eta, alpha)) - theta_R(realify eta, realify alpha) ||`:
    /// the connection computed in complex arithmetic against the same
    /// computation after realification.
    pub connection: f64,
    /// Commutator norm of the realified geodesic point with the realified
    /// multiplication-by-i operator: geodesics started at complex data stay
    /// complex-linear.
    pub geodesic_commutant: f64,
    /// `|| realify(f_C(t)) - f_R(t) ||`: the complex geodesic realifies to
    /// the real geodesic of the realified data.
    pub geodesic_match: f64,
}

/// Evaluates the totally-geodesic defects at probe time `t`.
pub fn totally_geodesic_defect(
    eta: &TangentVector,
    alpha: &TangentVector,
    t: f64,
    tol: &Tolerances,
) -> Result<TotallyGeodesicDefect> {
    eta.same_base(alpha)?;
    require_complex(eta.base().field(), "the totally-geodesic check")?;

    let theta_c = connection_form(eta.base().matrix(), eta.matrix(), alpha.matrix());
    let eta_r = realify_tangent(eta, tol)?;
    let alpha_r = realify_tangent(alpha, tol)?;
    let theta_r = connection_form(eta_r.base().matrix(), eta_r.matrix(), alpha_r.matrix());
    let connection = (&realify(&theta_c)? - &theta_r).frobenius();

    let real_geodesic = geodesic(&eta_r, t, tol)?;
    let j_mat = multiplication_by_i(eta.base().size());
    let geodesic_commutant = (&(real_geodesic.matrix() * &j_mat)
        - &(&j_mat * real_geodesic.matrix()))
        .frobenius();

    let complex_geodesic = geodesic(eta, t, tol)?;
    let geodesic_match =
        (&realify(complex_geodesic.matrix())? - real_geodesic.matrix()).frobenius();

    Ok(TotallyGeodesicDefect {
        connection,
        geodesic_commutant,
        geodesic_match,
    })
}
