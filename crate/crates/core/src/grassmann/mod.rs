//! The Grassmann manifold of a finite-dimensional real or Hermitian space
//! `E`, embedded as the set of orthogonal projections inside the self-adjoint
//! operators on `E`.
//!
//! A point is a self-adjoint idempotent `xi`; the subspace it represents is
//! its range. Tangent vectors at `xi` are the self-adjoint `eta` with
//! `eta xi + xi eta = eta`, equivalently those anti-commuting with the
//! reflection `2 xi - Id`; in a basis adapted to range and kernel they are
//! the block matrices `[[0, A*], [A, 0]]`. The normal space consists of the
//! self-adjoint operators commuting with `xi`.
//!
//! Submodules add graph charts ([`charts`]) and the metric geometry
//! ([`geometry`]): connection, curvature, geodesics, symmetries, and
//! parallel transport.

pub mod charts;
pub mod geometry;

mod io;

pub use charts::ChartCoord;
pub use io::{read_typed_matrix, read_typed_matrix_file, write_typed_matrix, TypedMatrix};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numkernel::{eig_hermitian, gram_schmidt, Field, Matrix};

/// `true` iff `m` is square with `||m* - m|| <= tol` and `||m m - m|| <= tol`.
pub fn is_projection(m: &Matrix, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let adjoint_defect = (m - &m.adjoint()).frobenius();
    let idem_defect = (&(m * m) - m).frobenius();
    adjoint_defect <= tol && idem_defect <= tol
}

/// A point of the Grassmannian: an orthogonal projection matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannPoint {
    proj: Matrix,
    rank: usize,
}

impl GrassmannPoint {
    /// Validates `proj` as an orthogonal projection and derives its rank
    /// (the number of eigenvalues at least 1/2).
    ///
    /// The spectrum must sit within `tol.validation` of `{0, 1}`.
    pub fn new(proj: Matrix, tol: &Tolerances) -> Result<Self> {
        if !proj.is_square() {
            return Err(Error::NotSquare {
                rows: proj.rows(),
                cols: proj.cols(),
            });
        }
        let norm = proj.frobenius().max(1.0);
        let adjoint_defect = (&proj - &proj.adjoint()).frobenius();
        if adjoint_defect > tol.validation * norm {
            return Err(Error::NotProjection(format!(
                "not self-adjoint (defect {adjoint_defect:.3e})"
            )));
        }
        let idem_defect = (&(&proj * &proj) - &proj).frobenius();
        if idem_defect > tol.validation {
            return Err(Error::NotProjection(format!(
                "not idempotent (defect {idem_defect:.3e})"
            )));
        }
        let eig = eig_hermitian(&proj.symmetrize(), tol)?;
        for &l in &eig.eigenvalues {
            if binary_distance(l) > tol.validation {
                return Err(Error::SpectrumNotBinary {
                    eigenvalue: l,
                    max_dist: tol.validation,
                });
            }
        }
        let rank = eig.eigenvalues.iter().filter(|&&l| l >= 0.5).count();
        Ok(Self { proj, rank })
    }

    /// Re-projects a drifted matrix onto the manifold: eigendecompose, snap
    /// eigenvalues to `{0, 1}`, rebuild. Eigenvalues farther than 0.1 from
    /// `{0, 1}` are rejected. Used inside iterative processes; standalone
    /// operations never modify their inputs.
    pub fn renormalize(m: &Matrix, tol: &Tolerances) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let eig = eig_hermitian(&m.symmetrize(), tol)?;
        for &l in &eig.eigenvalues {
            if binary_distance(l) > 0.1 {
                return Err(Error::SpectrumNotBinary {
                    eigenvalue: l,
                    max_dist: 0.1,
                });
            }
        }
        let rank = eig.eigenvalues.iter().filter(|&&l| l >= 0.5).count();
        let n = m.rows();
        let u = eig.eigenvectors.columns(n - rank, rank);
        let proj = &u * &u.adjoint();
        Ok(Self { proj, rank })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.proj
    }

    /// Ambient dimension `N`.
    pub fn size(&self) -> usize {
        self.proj.rows()
    }

    /// Dimension `n` of the represented subspace.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.proj.field()
    }

    /// Manifold dimension at this point: `n (N - n)` over the reals and, as
    /// a real manifold, `2 n (N - n)` over the complex numbers.
    pub fn manifold_dim(&self) -> usize {
        let base = self.rank * (self.size() - self.rank);
        match self.field() {
            Field::Real => base,
            Field::Complex => 2 * base,
        }
    }

    /// The reflection `2 xi - Id` across the represented subspace.
    pub fn reflection(&self) -> Matrix {
        &self.proj.scale(2.0) - &Matrix::identity(self.size(), self.field())
    }

    /// `true` iff `eta` is self-adjoint and satisfies the tangency identity
    /// `eta xi + xi eta = eta` within `tol * max(1, ||eta||)`.
    pub fn is_tangent(&self, eta: &Matrix, tol: f64) -> bool {
        if eta.shape() != self.proj.shape() || eta.field() != self.field() {
            return false;
        }
        let scale = eta.frobenius().max(1.0);
        if !eta.is_self_adjoint(tol * scale) {
            return false;
        }
        let xi = &self.proj;
        let defect = (&(&(eta * xi) + &(xi * eta)) - eta).frobenius();
        defect <= tol * scale
    }

    /// `true` iff `eta` is self-adjoint and commutes with the projection.
    pub fn is_normal(&self, eta: &Matrix, tol: f64) -> bool {
        if eta.shape() != self.proj.shape() || eta.field() != self.field() {
            return false;
        }
        let scale = eta.frobenius().max(1.0);
        if !eta.is_self_adjoint(tol * scale) {
            return false;
        }
        let xi = &self.proj;
        (&(eta * xi) - &(xi * eta)).frobenius() <= tol * scale
    }

    /// Raw tangent-projection formula
    /// `(Id - xi) eta xi + xi eta (Id - xi)` without wrapping.
    pub(crate) fn tangent_project_matrix(&self, eta: &Matrix) -> Matrix {
        let xi = &self.proj;
        let id = Matrix::identity(self.size(), self.field());
        let co = &id - xi;
        &(&(&co * eta) * xi) + &(&(xi * eta) * &co)
    }

    /// Orthogonal projection of a self-adjoint matrix onto the tangent space
    /// at this point. Non-self-adjoint input is symmetrized first.
    pub fn tangent_project(&self, eta: &Matrix, tol: &Tolerances) -> Result<TangentVector> {
        if eta.shape() != self.proj.shape() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.size(), self.size()),
                got: format!("{}x{}", eta.rows(), eta.cols()),
            });
        }
        if eta.field() != self.field() {
            return Err(Error::FieldMismatch(format!(
                "point is {}, input is {}",
                self.field(),
                eta.field()
            )));
        }
        let sym = eta.symmetrize();
        TangentVector::new(self, self.tangent_project_matrix(&sym), tol)
    }

    /// Complement of the tangent projection, `eta - P_tan(eta)`, so that the
    /// two parts always recombine to `eta` exactly. Agrees with the closed
    /// form `(Id - xi) eta (Id - xi) + xi eta xi` up to rounding.
    pub fn normal_project(&self, eta: &Matrix) -> Matrix {
        let sym = eta.symmetrize();
        &sym - &self.tangent_project_matrix(&sym)
    }
}

fn binary_distance(l: f64) -> f64 {
    l.abs().min((l - 1.0).abs())
}

/// A tangent vector anchored at a point of the Grassmannian.
#[derive(Debug, Clone)]
pub struct TangentVector {
    base: GrassmannPoint,
    mat: Matrix,
}

impl TangentVector {
    /// Validates self-adjointness, the tangency identity and
    /// anti-commutation with the reflection, all within
    /// `tol.validation * max(1, ||eta||)`.
    pub fn new(base: &GrassmannPoint, mat: Matrix, tol: &Tolerances) -> Result<Self> {
        if mat.shape() != base.matrix().shape() || mat.field() != base.field() {
            return Err(Error::NotTangent(format!(
                "shape/field mismatch with base point ({}x{} {})",
                mat.rows(),
                mat.cols(),
                mat.field()
            )));
        }
        let scale = mat.frobenius().max(1.0);
        let threshold = tol.validation * scale;
        let adjoint_defect = (&mat - &mat.adjoint()).frobenius();
        if adjoint_defect > threshold {
            return Err(Error::NotTangent(format!(
                "not self-adjoint (defect {adjoint_defect:.3e})"
            )));
        }
        let xi = base.matrix();
        let tangency = (&(&(&mat * xi) + &(xi * &mat)) - &mat).frobenius();
        if tangency > threshold {
            return Err(Error::NotTangent(format!(
                "eta xi + xi eta = eta violated (defect {tangency:.3e})"
            )));
        }
        let refl = base.reflection();
        let anti = (&(&mat * &refl) + &(&refl * &mat)).frobenius();
        if anti > threshold {
            return Err(Error::NotTangent(format!(
                "anti-commutation with 2 xi - Id violated (defect {anti:.3e})"
            )));
        }
        Ok(Self {
            base: base.clone(),
            mat,
        })
    }

    pub fn zero(base: &GrassmannPoint) -> Self {
        Self {
            base: base.clone(),
            mat: Matrix::zeros(base.size(), base.size(), base.field()),
        }
    }

    pub fn base(&self) -> &GrassmannPoint {
        &self.base
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn norm(&self) -> f64 {
        self.mat.frobenius()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            base: self.base.clone(),
            mat: self.mat.scale(s),
        }
    }

    pub(crate) fn same_base(&self, other: &Self) -> Result<()> {
        if self.base.matrix() == other.base.matrix() {
            Ok(())
        } else {
            Err(Error::MismatchedBasePoints)
        }
    }
}

/// An orthonormal basis of a subspace together with a cached orthonormal
/// basis of its orthogonal complement.
#[derive(Debug, Clone)]
pub struct SubspaceFrame {
    frame: Matrix,
    complement: Matrix,
}

impl SubspaceFrame {
    /// Wraps an `N x n` matrix with orthonormal columns. The complement
    /// frame is derived once from the low eigenvectors of `F F*`, which the
    /// eigensolver orders deterministically.
    pub fn new(frame: Matrix, tol: &Tolerances) -> Result<Self> {
        let (big_n, n) = frame.shape();
        if n > big_n {
            return Err(Error::InvalidArgument(format!(
                "frame width {n} exceeds ambient dimension {big_n}"
            )));
        }
        let gram_defect =
            (&(&frame.adjoint() * &frame) - &Matrix::identity(n, frame.field())).frobenius();
        if gram_defect > tol.validation {
            return Err(Error::NotOrthogonal {
                defect: gram_defect,
            });
        }
        let proj = &frame * &frame.adjoint();
        let eig = eig_hermitian(&proj.symmetrize(), tol)?;
        let low = eig.eigenvectors.columns(0, big_n - n);
        let complement = if big_n == n { low } else { gram_schmidt(&low)? };
        Ok(Self { frame, complement })
    }

    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    pub fn complement(&self) -> &Matrix {
        &self.complement
    }

    /// Ambient dimension `N`.
    pub fn size(&self) -> usize {
        self.frame.rows()
    }

    /// Number of columns `n`.
    pub fn rank(&self) -> usize {
        self.frame.cols()
    }

    pub fn field(&self) -> Field {
        self.frame.field()
    }
}

/// The projection `U U*` onto the span of a frame.
pub fn point_from_frame(u: &SubspaceFrame, tol: &Tolerances) -> Result<GrassmannPoint> {
    let proj = u.frame() * &u.frame().adjoint();
    GrassmannPoint::new(proj, tol)
}

/// Recovers a frame from a point: the re-orthonormalized eigenvectors with
/// eigenvalue near 1.
pub fn frame_from_point(xi: &GrassmannPoint, tol: &Tolerances) -> Result<SubspaceFrame> {
    let eig = eig_hermitian(&xi.matrix().symmetrize(), tol)?;
    for &l in &eig.eigenvalues {
        if binary_distance(l) > 0.1 {
            return Err(Error::SpectrumNotBinary {
                eigenvalue: l,
                max_dist: 0.1,
            });
        }
    }
    let n = xi.size();
    let cols = eig.eigenvectors.columns(n - xi.rank(), xi.rank());
    let frame = if xi.rank() == 0 { cols } else { gram_schmidt(&cols)? };
    SubspaceFrame::new(frame, tol)
}

/// A random point of given rank, drawn from a seeded Gaussian frame.
pub fn random_point(
    rng: &mut crate::numkernel::Rng,
    big_n: usize,
    n: usize,
    field: Field,
    tol: &Tolerances,
) -> Result<GrassmannPoint> {
    let u = crate::numkernel::random_orthonormal_frame(rng, big_n, n, field)?;
    point_from_frame(&SubspaceFrame::new(u, tol)?, tol)
}

/// A random tangent vector at `xi`: the tangent projection of a random
/// self-adjoint matrix.
pub fn random_tangent(
    rng: &mut crate::numkernel::Rng,
    xi: &GrassmannPoint,
    tol: &Tolerances,
) -> Result<TangentVector> {
    let h = crate::numkernel::random_hermitian(rng, xi.size(), xi.field());
    xi.tangent_project(&h, tol)
}

/// The six equivalent tangency conditions evaluated as independent booleans:
/// fixed point of the tangent projection; block mapping between range and
/// kernel; the two-sided identity; the two one-sided identities;
/// anti-commutation with the reflection.
pub fn tangent_condition_flags(
    xi: &GrassmannPoint,
    eta: &Matrix,
    tolv: f64,
    tol: &Tolerances,
) -> Result<[bool; 6]> {
    let scale = eta.frobenius().max(1.0);
    let thr = tolv * scale;
    let sa = eta.is_self_adjoint(thr);
    let p = xi.matrix();
    let id = Matrix::identity(xi.size(), xi.field());
    let co = &id - p;

    let fixed_point = sa && (&xi.tangent_project_matrix(&eta.symmetrize()) - eta).frobenius() <= thr;

    let f = frame_from_point(xi, tol)?;
    let range_to_kernel = sa
        && (&(&f.frame().adjoint() * eta) * f.frame()).frobenius() <= thr
        && (&(&f.complement().adjoint() * eta) * f.complement()).frobenius() <= thr;

    let two_sided = sa && (&(&(eta * p) + &(p * eta)) - eta).frobenius() <= thr;
    let one_sided_left = sa && (&(eta * p) - &(&co * eta)).frobenius() <= thr;
    let one_sided_right = sa && (&(eta * &co) - &(p * eta)).frobenius() <= thr;
    let refl = xi.reflection();
    let anticommute = sa && (&(eta * &refl) + &(&refl * eta)).frobenius() <= thr;

    Ok([
        fixed_point,
        range_to_kernel,
        two_sided,
        one_sided_left,
        one_sided_right,
        anticommute,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{hs_inner, random_hermitian, Rng};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_is_a_projection() {
        assert!(is_projection(&Matrix::identity(3, Field::Real), 1e-9));
    }

    #[test]
    fn half_matrix_is_a_projection() {
        let m = Matrix::from_rows_real(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(is_projection(&m, 1e-9));
    }

    #[test]
    fn non_self_adjoint_is_not_a_projection() {
        let m = Matrix::from_rows_real(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(!is_projection(&m, 1e-9));
    }

    #[test]
    fn frame_to_point_examples() {
        let e1 = Matrix::from_rows_real(&[vec![1.0], vec![0.0]]).unwrap();
        let f = SubspaceFrame::new(e1, &tol()).unwrap();
        let p = point_from_frame(&f, &tol()).unwrap();
        assert_eq!(p.matrix(), &Matrix::diagonal(&[1.0, 0.0]));
        assert_eq!(p.rank(), 1);

        let s = 1.0 / 2.0_f64.sqrt();
        let diag = Matrix::from_rows_real(&[vec![s], vec![s]]).unwrap();
        let f = SubspaceFrame::new(diag, &tol()).unwrap();
        let p = point_from_frame(&f, &tol()).unwrap();
        let expected = Matrix::from_rows_real(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!((p.matrix() - &expected).frobenius() < 1e-14);
    }

    #[test]
    fn zero_point_has_empty_frame() {
        let p = GrassmannPoint::new(Matrix::zeros(3, 3, Field::Real), &tol()).unwrap();
        assert_eq!(p.rank(), 0);
        let f = frame_from_point(&p, &tol()).unwrap();
        assert_eq!(f.frame().shape(), (3, 0));
        assert_eq!(f.complement().shape(), (3, 3));
    }

    #[test]
    fn round_trip_point_frame_point() {
        let mut rng = Rng::new(11);
        for field in [Field::Real, Field::Complex] {
            let p = random_point(&mut rng, 5, 2, field, &tol()).unwrap();
            let f = frame_from_point(&p, &tol()).unwrap();
            let back = point_from_frame(&f, &tol()).unwrap();
            assert!((back.matrix() - p.matrix()).frobenius() < 1e-8);
        }
    }

    #[test]
    fn dimension_at_examples() {
        let mut rng = Rng::new(12);
        let p = random_point(&mut rng, 2, 1, Field::Real, &tol()).unwrap();
        assert_eq!(p.manifold_dim(), 1);
        let p = GrassmannPoint::new(Matrix::zeros(5, 5, Field::Real), &tol()).unwrap();
        assert_eq!(p.manifold_dim(), 0);
        let p = random_point(&mut rng, 4, 2, Field::Complex, &tol()).unwrap();
        assert_eq!(p.manifold_dim(), 8);
    }

    #[test]
    fn block_form_is_tangent_and_diagonal_is_normal() {
        let xi = GrassmannPoint::new(Matrix::diagonal(&[1.0, 0.0]), &tol()).unwrap();
        let swap = Matrix::from_rows_real(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(xi.is_tangent(&swap, 1e-9));
        assert!(!xi.is_normal(&swap, 1e-9));

        let diag = Matrix::diagonal(&[2.0, 3.0]);
        assert!(xi.is_normal(&diag, 1e-9));
        assert!(!xi.is_tangent(&diag, 1e-9));

        let nilpotent = Matrix::from_rows_real(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(!xi.is_tangent(&nilpotent, 1e-9));
        assert!(!xi.is_normal(&nilpotent, 1e-9));
    }

    #[test]
    fn projection_splits_identity_and_swap() {
        let xi = GrassmannPoint::new(Matrix::diagonal(&[1.0, 0.0]), &tol()).unwrap();
        let id = Matrix::identity(2, Field::Real);
        let t = xi.tangent_project(&id, &tol()).unwrap();
        assert_eq!(t.norm(), 0.0);
        assert!((&xi.normal_project(&id) - &id).frobenius() < 1e-15);

        let swap = Matrix::from_rows_real(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let t = xi.tangent_project(&swap, &tol()).unwrap();
        assert!((t.matrix() - &swap).frobenius() < 1e-15);
        assert!(xi.normal_project(&swap).frobenius() < 1e-15);
    }

    #[test]
    fn tangent_and_normal_parts_are_orthogonal_and_recombine() {
        let mut rng = Rng::new(21);
        for field in [Field::Real, Field::Complex] {
            let xi = random_point(&mut rng, 6, 2, field, &tol()).unwrap();
            for _ in 0..20 {
                let eta = random_hermitian(&mut rng, 6, field);
                let t = xi.tangent_project(&eta, &tol()).unwrap();
                let n = xi.normal_project(&eta);
                assert!(hs_inner(t.matrix(), &n).unwrap().abs() <= 1e-12);
                // The normal part is the exact complement of the tangent
                // part, so the splitting identity holds bit for bit.
                let sym = eta.symmetrize();
                assert_eq!((&(&sym - t.matrix()) - &n).frobenius(), 0.0);
                let naive = (&(t.matrix() + &n) - &sym).frobenius();
                assert!(naive <= 1e-15 * sym.frobenius().max(1.0));
                // Closed form of the normal projection agrees to rounding.
                let idm = Matrix::identity(6, field);
                let co = &idm - xi.matrix();
                let closed = &(&(&co * &eta) * &co) + &(&(xi.matrix() * &eta) * xi.matrix());
                assert!((&n - &closed.symmetrize()).frobenius() < 1e-13);
                // Idempotency of the tangent projection.
                let tt = xi.tangent_project(t.matrix(), &tol()).unwrap();
                assert!((tt.matrix() - t.matrix()).frobenius() <= 1e-12 * t.norm().max(1.0));
            }
        }
    }

    #[test]
    fn tangent_characterizations_agree() {
        // The equivalent descriptions of the tangent space must answer
        // identically on random self-adjoint probes, projected or not.
        let mut rng = Rng::new(22);
        for field in [Field::Real, Field::Complex] {
            for trial in 0..100 {
                let xi = random_point(&mut rng, 5, 2, field, &tol()).unwrap();
                let raw = random_hermitian(&mut rng, 5, field);
                let eta = if trial % 2 == 0 {
                    raw
                } else {
                    xi.tangent_project(&raw, &tol()).unwrap().matrix().clone()
                };
                let checks = tangent_condition_flags(&xi, &eta, 1e-9, &tol()).unwrap();
                assert!(
                    checks.iter().all(|&c| c == checks[0]),
                    "conditions disagree: {checks:?}"
                );
            }
        }
    }

    #[test]
    fn renormalize_snaps_spectrum() {
        let mut rng = Rng::new(23);
        let p = random_point(&mut rng, 4, 2, Field::Real, &tol()).unwrap();
        let drift = random_hermitian(&mut rng, 4, Field::Real).scale(1e-3);
        let drifted = p.matrix() + &drift;
        let snapped = GrassmannPoint::renormalize(&drifted, &tol()).unwrap();
        assert!(is_projection(snapped.matrix(), 1e-12));
        assert_eq!(snapped.rank(), 2);

        let hopeless = Matrix::diagonal(&[0.5, 0.5]);
        assert!(matches!(
            GrassmannPoint::renormalize(&hopeless, &tol()),
            Err(Error::SpectrumNotBinary { .. })
        ));
    }

    #[test]
    fn full_and_empty_points_have_no_tangent_space() {
        let mut rng = Rng::new(24);
        for rank in [0usize, 4] {
            let xi = random_point(&mut rng, 4, rank, Field::Real, &tol()).unwrap();
            let eta = random_hermitian(&mut rng, 4, Field::Real);
            let t = xi.tangent_project(&eta, &tol()).unwrap();
            assert!(t.norm() <= 1e-12);
            assert_eq!(xi.manifold_dim(), 0);
        }
    }
}
