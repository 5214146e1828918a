//! Riemannian gradient ascent on the Grassmannian: dominant invariant
//! subspaces of a self-adjoint matrix.
//!
//! The objective `f(xi) = <xi, A>` has Riemannian gradient equal to the
//! tangent projection of `A`, and the closed-form geodesic serves as the
//! retraction. At a maximizer the range of `xi` is the span of the top
//! eigenvectors of `A`, which gives an eigensolver-based oracle for the
//! converged value.

use std::fmt::Write as _;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::grassmann::geometry::geodesic;
use crate::grassmann::{random_point, GrassmannPoint};
use crate::numkernel::{hs_inner, Matrix, Rng};

/// Gradient-ascent configuration.
#[derive(Debug, Clone, Copy)]
pub struct DescentConfig {
    /// Cap on the geodesic step length; the actual step is
    /// `min(step_size, ||grad||)` before backtracking.
    pub step_size: f64,
    pub max_iters: usize,
    /// Stop when the Riemannian gradient norm falls below this.
    pub grad_tol: f64,
    /// Seed for the random starting frame.
    pub seed: u64,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            step_size: 0.1,
            max_iters: 500,
            grad_tol: 1e-8,
            seed: 0,
        }
    }
}

/// One row of the iteration trace.
#[derive(Debug, Clone, Copy)]
pub struct IterationRecord {
    pub iteration: usize,
    pub objective: f64,
    pub grad_norm: f64,
}

/// Full ascent trace. The objective column is nondecreasing thanks to
/// backtracking.
#[derive(Debug, Clone)]
pub struct DescentTrace {
    pub iterates: Vec<IterationRecord>,
    pub final_point: GrassmannPoint,
    /// `false` when the gradient tolerance was not reached (degenerate
    /// spectral gap, iteration cap); reported rather than failing.
    pub converged: bool,
}

impl DescentTrace {
    pub fn final_objective(&self) -> f64 {
        self.iterates.last().map_or(f64::NAN, |r| r.objective)
    }

    pub fn final_grad_norm(&self) -> f64 {
        self.iterates.last().map_or(f64::NAN, |r| r.grad_norm)
    }

    pub fn iterations(&self) -> usize {
        self.iterates.last().map_or(0, |r| r.iteration)
    }

    /// CSV rendering with header `iter,objective,grad_norm`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iter,objective,grad_norm\n");
        for r in &self.iterates {
            let _ = writeln!(out, "{},{},{}", r.iteration, r.objective, r.grad_norm);
        }
        out
    }
}

const MAX_HALVINGS: usize = 30;
const ARMIJO: f64 = 0.1;

/// Maximizes `<xi, A>` over rank-`n` points by geodesic gradient ascent
/// with backtracking (halve the step until the objective increases).
///
/// `a` must be self-adjoint. The start point is a seeded random frame. At
/// convergence the range of the final point spans the top-`n` eigenspace
/// of `a` whenever the spectral gap at `n` is positive.
pub fn dominant_subspace(a: &Matrix, n: usize, cfg: &DescentConfig) -> Result<DescentTrace> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let tol = Tolerances::default();
    let norm = a.frobenius();
    let adjoint_defect = (a - &a.adjoint()).frobenius();
    if adjoint_defect > tol.validation * norm.max(1.0) {
        return Err(Error::NotSelfAdjoint {
            defect: adjoint_defect,
            tol: tol.validation * norm.max(1.0),
        });
    }
    let big_n = a.rows();
    if n < 1 || n > big_n {
        return Err(Error::InvalidArgument(format!(
            "rank {n} out of range 1..={big_n}"
        )));
    }
    if cfg.step_size <= 0.0 {
        return Err(Error::InvalidArgument("step_size must be positive".into()));
    }

    let sym = a.symmetrize();
    let mut rng = Rng::new(cfg.seed);
    let mut point = random_point(&mut rng, big_n, n, a.field(), &tol)?;
    let mut objective = hs_inner(point.matrix(), &sym)?;

    let mut iterates = Vec::with_capacity(cfg.max_iters + 1);
    let mut converged = false;

    for iteration in 0..=cfg.max_iters {
        let grad = point.tangent_project(&sym, &tol)?;
        let grad_norm = grad.norm();
        iterates.push(IterationRecord {
            iteration,
            objective,
            grad_norm,
        });
        if grad_norm <= cfg.grad_tol {
            converged = true;
            break;
        }
        if iteration == cfg.max_iters {
            break;
        }

        // Unit-speed step of length `step`, taken as geodesic(grad, step /
        // ||grad||): normalizing a vanishing gradient would amplify its
        // machine-level non-tangency past the validation gate.
        let mut step = cfg.step_size.min(grad_norm);
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let candidate = geodesic(&grad, step / grad_norm, &tol)?;
            let candidate = GrassmannPoint::renormalize(candidate.matrix(), &tol)?;
            let value = hs_inner(candidate.matrix(), &sym)?;
            // Sufficient increase, so a barely-improving overshoot past the
            // maximizer keeps halving instead of bouncing.
            if value >= objective + ARMIJO * step * grad_norm {
                point = candidate;
                objective = value;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // Objective increments have fallen below float resolution.
            // Scan the halvings once more for the candidate with the
            // smallest gradient that does not decrease the objective.
            let mut step = cfg.step_size.min(grad_norm);
            let mut best: Option<(GrassmannPoint, f64, f64)> = None;
            for _ in 0..=MAX_HALVINGS {
                let candidate = geodesic(&grad, step / grad_norm, &tol)?;
                let candidate = GrassmannPoint::renormalize(candidate.matrix(), &tol)?;
                let value = hs_inner(candidate.matrix(), &sym)?;
                let g = candidate.tangent_project(&sym, &tol)?.norm();
                if value >= objective && best.as_ref().is_none_or(|(_, _, bg)| g < *bg) {
                    best = Some((candidate, value, g));
                }
                step *= 0.5;
            }
            match best {
                Some((candidate, value, g)) if g < grad_norm => {
                    point = candidate;
                    objective = value;
                }
                // Numerically stationary.
                _ => break,
            }
        }
    }

    Ok(DescentTrace {
        iterates,
        final_point: point,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{eig_hermitian, random_orthonormal_frame, Field};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    /// Self-adjoint matrix with prescribed spectrum in a random basis.
    fn with_spectrum(rng: &mut Rng, eigenvalues: &[f64], field: Field) -> Matrix {
        let n = eigenvalues.len();
        let q = random_orthonormal_frame(rng, n, n, field).unwrap();
        let d = Matrix::diagonal(eigenvalues);
        let d = match field {
            Field::Real => d,
            Field::Complex => d.to_complex(),
        };
        (&(&q * &d) * &q.adjoint()).symmetrize()
    }

    #[test]
    fn diagonal_three_by_three() {
        let a = Matrix::diagonal(&[3.0, 2.0, 1.0]);
        let trace = dominant_subspace(&a, 1, &DescentConfig::default()).unwrap();
        assert!(trace.converged);
        assert!((trace.final_objective() - 3.0).abs() <= 1e-8);
        let expected = Matrix::diagonal(&[1.0, 0.0, 0.0]);
        assert!((trace.final_point.matrix() - &expected).frobenius() <= 1e-6);
    }

    #[test]
    fn identity_is_stationary_everywhere() {
        let a = Matrix::identity(4, Field::Real);
        let trace = dominant_subspace(&a, 2, &DescentConfig::default()).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.iterations(), 0);
        assert!((trace.final_objective() - 2.0).abs() <= 1e-10);
    }

    #[test]
    fn random_spectrum_converges_to_top_eigenspace() {
        let mut rng = Rng::new(90);
        let a = with_spectrum(
            &mut rng,
            &[4.0, 3.1, 2.0, 0.9, 0.2, -1.0],
            Field::Real,
        );
        let trace = dominant_subspace(&a, 2, &DescentConfig::default()).unwrap();
        assert!((trace.final_objective() - 7.1).abs() <= 1e-8);

        // Eigensolver route for the optimum.
        let eig = eig_hermitian(&a, &tol()).unwrap();
        let top: f64 = eig.eigenvalues.iter().rev().take(2).sum();
        assert!((trace.final_objective() - top).abs() <= 1e-8);
        let u = eig.eigenvectors.columns(4, 2);
        let projector = &u * &u.adjoint();
        assert!((trace.final_point.matrix() - &projector).frobenius() <= 1e-6);

        // Monotone objective.
        for pair in trace.iterates.windows(2) {
            assert!(pair[1].objective >= pair[0].objective);
        }
        // Iterates were validated points throughout; the final one is too.
        assert!(crate::grassmann::is_projection(
            trace.final_point.matrix(),
            1e-9
        ));
        // Gradient at the eigendecomposition answer is negligible.
        let answer = GrassmannPoint::new(projector, &tol()).unwrap();
        let grad = answer.tangent_project(&a, &tol()).unwrap();
        assert!(grad.norm() <= 1e-10 * a.frobenius());
    }

    #[test]
    fn complex_field_converges_too() {
        let mut rng = Rng::new(91);
        let a = with_spectrum(&mut rng, &[2.5, 1.0, -0.5, -2.0], Field::Complex);
        let trace = dominant_subspace(&a, 1, &DescentConfig::default()).unwrap();
        assert!((trace.final_objective() - 2.5).abs() <= 1e-8);
    }

    #[test]
    fn csv_trace_shape_and_determinism() {
        let mut rng = Rng::new(92);
        let a = with_spectrum(&mut rng, &[3.0, 1.0, 0.5, -1.0, -2.0], Field::Real);
        let run = || dominant_subspace(&a, 2, &DescentConfig::default()).unwrap().to_csv();
        let csv = run();
        assert!(csv.starts_with("iter,objective,grad_norm\n"));
        assert_eq!(csv, run());
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = Matrix::from_rows_real(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            dominant_subspace(&a, 1, &DescentConfig::default()),
            Err(Error::NotSelfAdjoint { .. })
        ));
        let id = Matrix::identity(3, Field::Real);
        assert!(dominant_subspace(&id, 0, &DescentConfig::default()).is_err());
        assert!(dominant_subspace(&id, 4, &DescentConfig::default()).is_err());
        let cfg = DescentConfig {
            step_size: 0.0,
            ..Default::default()
        };
        assert!(dominant_subspace(&id, 1, &cfg).is_err());
    }

    #[test]
    fn degenerate_gap_reports_nonconvergence_gracefully() {
        // Repeated eigenvalue across the cut: any mixture is optimal, the
        // gradient still vanishes there, but a tiny iteration budget makes
        // the run stop early and report converged = false.
        let mut rng = Rng::new(93);
        let a = with_spectrum(&mut rng, &[2.0, 1.0, 1.0, 0.5], Field::Real);
        let cfg = DescentConfig {
            max_iters: 2,
            grad_tol: 1e-14,
            ..Default::default()
        };
        let trace = dominant_subspace(&a, 2, &cfg).unwrap();
        assert!(!trace.converged);
        assert!(trace.iterates.len() <= 4);
    }
}
