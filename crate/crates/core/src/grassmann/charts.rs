//! Graph charts on the Grassmannian.
//!
//! Fix a subspace `F` with frame matrix `F` and complement frame `F_perp`.
//! The chart domain consists of the points whose range is transverse to the
//! orthogonal complement of `F`; such a range is the graph of a unique
//! linear map `F -> F_perp`, and its coordinate matrix is the chart value.
//! With `U` spanning the range of `xi` and `phi = U (F* U)^{-1}` the chart
//! reads `(F_perp)* phi`, independent of the choice of `U`.

use super::{frame_from_point, GrassmannPoint, SubspaceFrame, TangentVector};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numkernel::{eig_hermitian, gram_schmidt, Matrix};

/// Chart coordinates: the matrix of a map `F -> F_perp` in the fixed frame
/// bases (`F` columns first, then `F_perp` columns).
#[derive(Debug, Clone)]
pub struct ChartCoord {
    chart_base: SubspaceFrame,
    coord: Matrix,
}

impl ChartCoord {
    pub fn new(chart_base: SubspaceFrame, coord: Matrix) -> Result<Self> {
        let expected = (chart_base.size() - chart_base.rank(), chart_base.rank());
        if coord.shape() != expected || coord.field() != chart_base.field() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", expected.0, expected.1),
                got: format!("{}x{}", coord.rows(), coord.cols()),
            });
        }
        Ok(Self { chart_base, coord })
    }

    pub fn base(&self) -> &SubspaceFrame {
        &self.chart_base
    }

    pub fn coord(&self) -> &Matrix {
        &self.coord
    }
}

/// Smallest singular value of `F* U`, the invertibility measure of the
/// restriction of the projection onto `F` to the range of `xi`.
fn transversality(f: &SubspaceFrame, xi: &GrassmannPoint, tol: &Tolerances) -> Result<f64> {
    let u = frame_from_point(xi, tol)?;
    let m = &f.frame().adjoint() * u.frame();
    if m.rows() == 0 {
        // Rank-zero chart: the empty map is trivially invertible.
        return Ok(1.0);
    }
    let gram = &m.adjoint() * &m;
    let eig = eig_hermitian(&gram.symmetrize(), tol)?;
    Ok(eig.eigenvalues[0].max(0.0).sqrt())
}

/// `true` iff `xi` lies in the chart domain of `F`: the smallest singular
/// value of `F* U` exceeds `sigma_tol`.
pub fn chart_domain_contains(
    f: &SubspaceFrame,
    xi: &GrassmannPoint,
    sigma_tol: f64,
    tol: &Tolerances,
) -> Result<bool> {
    if f.rank() != xi.rank() {
        return Err(Error::InvalidArgument(format!(
            "chart rank {} does not match point rank {}",
            f.rank(),
            xi.rank()
        )));
    }
    Ok(transversality(f, xi, tol)? > sigma_tol)
}

/// Default transversality threshold for chart-domain membership.
pub const CHART_DOMAIN_TOL: f64 = 1e-8;

/// Chart coordinates of `xi`: `(F_perp)* U (F* U)^{-1}`.
pub fn chart_forward(
    f: &SubspaceFrame,
    xi: &GrassmannPoint,
    tol: &Tolerances,
) -> Result<ChartCoord> {
    if f.rank() != xi.rank() {
        return Err(Error::InvalidArgument(format!(
            "chart rank {} does not match point rank {}",
            f.rank(),
            xi.rank()
        )));
    }
    let sigma = transversality(f, xi, tol)?;
    if sigma <= CHART_DOMAIN_TOL {
        return Err(Error::NotInChartDomain { sigma_min: sigma });
    }
    let u = frame_from_point(xi, tol)?;
    let fu_inv = (&f.frame().adjoint() * u.frame()).inverse()?;
    let phi = u.frame() * &fu_inv;
    let coord = &f.complement().adjoint() * &phi;
    ChartCoord::new(f.clone(), coord)
}

/// The point whose range is the graph `{x + coord(x)}`: orthonormalize
/// `F + F_perp coord` and square it up.
pub fn chart_inverse(c: &ChartCoord, tol: &Tolerances) -> Result<GrassmannPoint> {
    let f = c.base();
    let graph = f.frame() + &(f.complement() * c.coord());
    let q = if f.rank() == 0 { graph } else { gram_schmidt(&graph)? };
    GrassmannPoint::new(&q * &q.adjoint(), tol)
}

/// Differential of the chart at `xi` applied to a tangent vector, in the
/// `F`/`F_perp` coordinate bases:
/// `(F_perp)* (Id - phi F*) eta phi` with `phi = U (F* U)^{-1}`.
///
/// At the base point of the chart this reduces to the coordinate matrix of
/// the restriction of `eta` to `F`.
pub fn chart_differential(
    f: &SubspaceFrame,
    xi: &GrassmannPoint,
    eta: &TangentVector,
    tol: &Tolerances,
) -> Result<Matrix> {
    if eta.base().matrix() != xi.matrix() {
        return Err(Error::MismatchedBasePoints);
    }
    let sigma = transversality(f, xi, tol)?;
    if sigma <= CHART_DOMAIN_TOL {
        return Err(Error::NotInChartDomain { sigma_min: sigma });
    }
    let u = frame_from_point(xi, tol)?;
    let fu_inv = (&f.frame().adjoint() * u.frame()).inverse()?;
    let phi = u.frame() * &fu_inv;
    let id = Matrix::identity(xi.size(), xi.field());
    let through = &(&id - &(&phi * &f.frame().adjoint())) * &(eta.matrix() * &phi);
    Ok(&f.complement().adjoint() * &through)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{point_from_frame, random_point, random_tangent};
    use crate::numkernel::{random_orthonormal_frame, Field, Rng};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn axis_frame() -> SubspaceFrame {
        let e1 = Matrix::from_rows_real(&[vec![1.0], vec![0.0]]).unwrap();
        SubspaceFrame::new(e1, &tol()).unwrap()
    }

    fn line_point(t: f64) -> GrassmannPoint {
        let u = Matrix::from_rows_real(&[vec![t.cos()], vec![t.sin()]]).unwrap();
        point_from_frame(&SubspaceFrame::new(u, &tol()).unwrap(), &tol()).unwrap()
    }

    #[test]
    fn domain_membership_examples() {
        let f = axis_frame();
        let on_axis = GrassmannPoint::new(Matrix::diagonal(&[1.0, 0.0]), &tol()).unwrap();
        assert!(chart_domain_contains(&f, &on_axis, CHART_DOMAIN_TOL, &tol()).unwrap());

        let orthogonal = GrassmannPoint::new(Matrix::diagonal(&[0.0, 1.0]), &tol()).unwrap();
        assert!(!chart_domain_contains(&f, &orthogonal, CHART_DOMAIN_TOL, &tol()).unwrap());

        let diagonal = line_point(std::f64::consts::FRAC_PI_4);
        assert!(chart_domain_contains(&f, &diagonal, CHART_DOMAIN_TOL, &tol()).unwrap());

        let wrong_rank = GrassmannPoint::new(Matrix::identity(2, Field::Real), &tol()).unwrap();
        assert!(chart_domain_contains(&f, &wrong_rank, CHART_DOMAIN_TOL, &tol()).is_err());
    }

    #[test]
    fn chart_vanishes_at_its_base_point() {
        let f = axis_frame();
        let base = point_from_frame(&f, &tol()).unwrap();
        let c = chart_forward(&f, &base, &tol()).unwrap();
        assert!(c.coord().frobenius() < 1e-12);
    }

    #[test]
    fn line_slope_is_the_chart_value() {
        let f = axis_frame();
        let t = std::f64::consts::PI / 6.0;
        let c = chart_forward(&f, &line_point(t), &tol()).unwrap();
        // The chart value of a line through the origin is its slope, up to
        // the sign convention of the complement frame.
        assert!((c.coord().get_re(0, 0).abs() - t.tan()).abs() < 1e-12);
    }

    #[test]
    fn inverse_of_zero_recovers_base() {
        let f = axis_frame();
        let zero = Matrix::zeros(1, 1, Field::Real);
        let p = chart_inverse(&ChartCoord::new(f.clone(), zero).unwrap(), &tol()).unwrap();
        assert!((p.matrix() - point_from_frame(&f, &tol()).unwrap().matrix()).frobenius() < 1e-14);
    }

    #[test]
    fn unit_slope_gives_diagonal_line() {
        let f = axis_frame();
        let one = Matrix::from_rows_real(&[vec![1.0]]).unwrap();
        let p = chart_inverse(&ChartCoord::new(f, one).unwrap(), &tol()).unwrap();
        let expected = Matrix::from_rows_real(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!((p.matrix() - &expected).frobenius() < 1e-14);
    }

    #[test]
    fn forward_inverse_round_trips() {
        let mut rng = Rng::new(31);
        for field in [Field::Real, Field::Complex] {
            let f = SubspaceFrame::new(
                random_orthonormal_frame(&mut rng, 5, 2, field).unwrap(),
                &tol(),
            )
            .unwrap();
            for _ in 0..10 {
                let xi = random_point(&mut rng, 5, 2, field, &tol()).unwrap();
                // Round-trip accuracy degrades with the chart conditioning;
                // stay well inside the domain.
                if !chart_domain_contains(&f, &xi, 0.1, &tol()).unwrap() {
                    continue;
                }
                let c = chart_forward(&f, &xi, &tol()).unwrap();
                let back = chart_inverse(&c, &tol()).unwrap();
                assert!((back.matrix() - xi.matrix()).frobenius() < 1e-9);

                let c2 = chart_forward(&f, &back, &tol()).unwrap();
                assert!((c2.coord() - c.coord()).frobenius() < 1e-9);
            }
        }
    }

    #[test]
    fn differential_at_base_point_reads_off_the_block() {
        // eta = [[0, A*], [A, 0]] in the obvious axis basis of R^3 with a
        // rank-1 base: the differential at the base point is A itself.
        let e1 = Matrix::from_rows_real(&[vec![1.0], vec![0.0], vec![0.0]]).unwrap();
        let f = SubspaceFrame::new(e1, &tol()).unwrap();
        let xi = point_from_frame(&f, &tol()).unwrap();
        let eta_mat = Matrix::from_rows_real(&[
            vec![0.0, 2.0, -1.0],
            vec![2.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
        ])
        .unwrap();
        let eta = TangentVector::new(&xi, eta_mat, &tol()).unwrap();
        let d = chart_differential(&f, &xi, &eta, &tol()).unwrap();
        assert_eq!(d.shape(), (2, 1));
        // Complement columns are the remaining axes, deterministically
        // ordered by the eigensolver; compare against their pairing with A.
        let expected = &f.complement().adjoint()
            * &Matrix::from_rows_real(&[vec![0.0], vec![2.0], vec![-1.0]]).unwrap();
        assert!((&d - &expected).frobenius() < 1e-12);
    }

    #[test]
    fn differential_of_zero_is_zero() {
        let mut rng = Rng::new(32);
        let xi = random_point(&mut rng, 4, 2, Field::Real, &tol()).unwrap();
        let f = frame_from_point(&xi, &tol()).unwrap();
        let zero = TangentVector::zero(&xi);
        let d = chart_differential(&f, &xi, &zero, &tol()).unwrap();
        assert_eq!(d.frobenius(), 0.0);
    }

    #[test]
    fn differential_matches_finite_differences_of_the_chart() {
        use crate::grassmann::geometry::geodesic;
        let mut rng = Rng::new(33);
        for field in [Field::Real, Field::Complex] {
            let f = SubspaceFrame::new(
                random_orthonormal_frame(&mut rng, 5, 2, field).unwrap(),
                &tol(),
            )
            .unwrap();
            for _ in 0..5 {
                let xi = random_point(&mut rng, 5, 2, field, &tol()).unwrap();
                if !chart_domain_contains(&f, &xi, 1e-2, &tol()).unwrap() {
                    continue;
                }
                let eta = random_tangent(&mut rng, &xi, &tol()).unwrap();
                let h = 1e-5;
                let plus = chart_forward(&f, &geodesic(&eta, h, &tol()).unwrap(), &tol()).unwrap();
                let minus =
                    chart_forward(&f, &geodesic(&eta, -h, &tol()).unwrap(), &tol()).unwrap();
                let fd = (plus.coord() - minus.coord()).scale(1.0 / (2.0 * h));
                let d = chart_differential(&f, &xi, &eta, &tol()).unwrap();
                let rel = (&fd - &d).frobenius() / d.frobenius().max(1.0);
                assert!(rel < 1e-6, "relative FD mismatch {rel}");
            }
        }
    }
}
