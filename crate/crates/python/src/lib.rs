//! Python bindings: matrices, Grassmann points and tangent vectors, the
//! geometric operations on them, the subspace-optimization demo, and the
//! verification suites.
//!
//! Build as a cdylib and import as `grassgeo_py`; see `python/smoke_test.py`
//! at the workspace root for a usage tour. Complex matrices interoperate
//! with Python `complex` scalars.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use grassgeo::complexgrass;
use grassgeo::grassmann::geometry;
use grassgeo::grassmann::{
    frame_from_point, point_from_frame, GrassmannPoint, SubspaceFrame, TangentVector,
};
use grassgeo::numkernel::{
    eig_hermitian, hs_inner, matrix_trig, random_orthonormal_frame, read_matrix, write_matrix,
    Field, Matrix as CoreMatrix, Rng,
};
use grassgeo::optdemo::{dominant_subspace, DescentConfig};
use grassgeo::verify::{run_suite, Suite, SuiteParams};
use grassgeo::Tolerances;

fn to_py_err(e: grassgeo::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn parse_field(name: &str) -> PyResult<Field> {
    name.parse().map_err(to_py_err)
}

/// Dense real or complex matrix.
#[pyclass(name = "Matrix", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    inner: CoreMatrix,
}

#[pymethods]
impl PyMatrix {
    /// Real matrix from nested lists of floats.
    #[staticmethod]
    fn real(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(Self {
            inner: CoreMatrix::from_rows_real(&rows).map_err(to_py_err)?,
        })
    }

    /// Complex matrix from nested lists of Python complex numbers.
    #[staticmethod]
    fn complex(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        Ok(Self {
            inner: CoreMatrix::from_rows_complex(&rows).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn identity(n: usize, field: &str) -> PyResult<Self> {
        Ok(Self {
            inner: CoreMatrix::identity(n, parse_field(field)?),
        })
    }

    #[staticmethod]
    fn zeros(rows: usize, cols: usize, field: &str) -> PyResult<Self> {
        Ok(Self {
            inner: CoreMatrix::zeros(rows, cols, parse_field(field)?),
        })
    }

    /// Parse the plain text format (`rows cols field` header).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: read_matrix(text).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// Entries as nested lists of Python complex numbers.
    fn to_lists(&self) -> Vec<Vec<Complex64>> {
        (0..self.inner.rows())
            .map(|r| (0..self.inner.cols()).map(|c| self.inner.get(r, c)).collect())
            .collect()
    }

    fn text(&self) -> String {
        write_matrix(&self.inner)
    }

    fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    fn add(&self, other: &Self) -> PyResult<Self> {
        check_same_shape(&self.inner, &other.inner)?;
        Ok(Self {
            inner: &self.inner + &other.inner,
        })
    }

    fn sub(&self, other: &Self) -> PyResult<Self> {
        check_same_shape(&self.inner, &other.inner)?;
        Ok(Self {
            inner: &self.inner - &other.inner,
        })
    }

    fn scale(&self, s: f64) -> Self {
        Self {
            inner: self.inner.scale(s),
        }
    }

    fn matmul(&self, other: &Self) -> PyResult<Self> {
        if self.inner.cols() != other.inner.rows() || self.inner.field() != other.inner.field() {
            return Err(PyValueError::new_err("matmul shape or field mismatch"));
        }
        Ok(Self {
            inner: &self.inner * &other.inner,
        })
    }

    fn frobenius(&self) -> f64 {
        self.inner.frobenius()
    }

    /// Real Hilbert-Schmidt inner product `Re tr(a* b)`.
    fn hs_inner(&self, other: &Self) -> PyResult<f64> {
        hs_inner(&self.inner, &other.inner).map_err(to_py_err)
    }

    /// Eigendecomposition of a self-adjoint matrix: ascending eigenvalues,
    /// orthonormal eigenvector matrix, reconstruction residual.
    fn eig(&self) -> PyResult<(Vec<f64>, Self, f64)> {
        let eig = eig_hermitian(&self.inner, &tol()).map_err(to_py_err)?;
        Ok((
            eig.eigenvalues,
            Self {
                inner: eig.eigenvectors,
            },
            eig.residual,
        ))
    }

    /// `(cos(t a), sin(t a))` for self-adjoint `a`.
    fn trig(&self, t: f64) -> PyResult<(Self, Self)> {
        let (c, s) = matrix_trig(&self.inner, t, &tol()).map_err(to_py_err)?;
        Ok((Self { inner: c }, Self { inner: s }))
    }

    fn __repr__(&self) -> String {
        format!(
            "Matrix({}x{} {})",
            self.inner.rows(),
            self.inner.cols(),
            self.inner.field()
        )
    }
}

fn check_same_shape(a: &CoreMatrix, b: &CoreMatrix) -> PyResult<()> {
    if a.shape() != b.shape() || a.field() != b.field() {
        return Err(PyValueError::new_err("shape or field mismatch"));
    }
    Ok(())
}

/// A point of the Grassmannian: an orthogonal projection matrix.
#[pyclass(name = "GrassmannPoint", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGrassmannPoint {
    inner: GrassmannPoint,
}

#[pymethods]
impl PyGrassmannPoint {
    /// Validate a projection matrix as a point.
    #[new]
    fn new(matrix: &PyMatrix) -> PyResult<Self> {
        Ok(Self {
            inner: GrassmannPoint::new(matrix.inner.clone(), &tol()).map_err(to_py_err)?,
        })
    }

    /// The projection onto the column span of an orthonormal frame.
    #[staticmethod]
    fn from_frame(frame: &PyMatrix) -> PyResult<Self> {
        let f = SubspaceFrame::new(frame.inner.clone(), &tol()).map_err(to_py_err)?;
        Ok(Self {
            inner: point_from_frame(&f, &tol()).map_err(to_py_err)?,
        })
    }

    /// Seeded random point of the given rank.
    #[staticmethod]
    fn random(n: usize, rank: usize, field: &str, seed: u64) -> PyResult<Self> {
        let mut rng = Rng::new(seed);
        Ok(Self {
            inner: grassgeo::grassmann::random_point(&mut rng, n, rank, parse_field(field)?, &tol())
                .map_err(to_py_err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// Manifold dimension at this point.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.manifold_dim()
    }

    fn matrix(&self) -> PyMatrix {
        PyMatrix {
            inner: self.inner.matrix().clone(),
        }
    }

    /// Orthonormal frame spanning the range.
    fn frame(&self) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            inner: frame_from_point(&self.inner, &tol())
                .map_err(to_py_err)?
                .frame()
                .clone(),
        })
    }

    fn is_tangent(&self, eta: &PyMatrix) -> bool {
        self.inner.is_tangent(&eta.inner, 1e-9)
    }

    fn is_normal(&self, eta: &PyMatrix) -> bool {
        self.inner.is_normal(&eta.inner, 1e-9)
    }

    /// Orthogonal projection of a self-adjoint matrix onto the tangent
    /// space at this point.
    fn tangent_project(&self, eta: &PyMatrix) -> PyResult<PyTangentVector> {
        Ok(PyTangentVector {
            inner: self.inner.tangent_project(&eta.inner, &tol()).map_err(to_py_err)?,
        })
    }

    fn normal_project(&self, eta: &PyMatrix) -> PyMatrix {
        PyMatrix {
            inner: self.inner.normal_project(&eta.inner),
        }
    }

    /// Wrap a validated tangent matrix at this point.
    fn tangent(&self, eta: &PyMatrix) -> PyResult<PyTangentVector> {
        Ok(PyTangentVector {
            inner: TangentVector::new(&self.inner, eta.inner.clone(), &tol())
                .map_err(to_py_err)?,
        })
    }

    /// Seeded random tangent vector at this point.
    fn random_tangent(&self, seed: u64) -> PyResult<PyTangentVector> {
        let mut rng = Rng::new(seed);
        Ok(PyTangentVector {
            inner: grassgeo::grassmann::random_tangent(&mut rng, &self.inner, &tol())
                .map_err(to_py_err)?,
        })
    }

    /// Reflection of `other` through this point.
    fn symmetry(&self, other: &PyGrassmannPoint) -> PyResult<PyGrassmannPoint> {
        Ok(Self {
            inner: geometry::symmetry(&self.inner, &other.inner, &tol()).map_err(to_py_err)?,
        })
    }

    /// Sectional curvature `(riem, normalized | None)` of the plane
    /// spanned by two tangent vectors.
    fn sectional(
        &self,
        a: &PyTangentVector,
        b: &PyTangentVector,
    ) -> PyResult<(f64, Option<f64>)> {
        let s = geometry::sectional(&a.inner, &b.inner).map_err(to_py_err)?;
        Ok((s.riem, s.normalized))
    }

    /// Closed-form Ricci curvature (real field).
    fn ricci(&self, a: &PyTangentVector, b: &PyTangentVector) -> PyResult<f64> {
        geometry::ricci(&a.inner, &b.inner).map_err(to_py_err)
    }

    /// Ricci curvature as a trace over an orthonormal tangent basis.
    fn ricci_trace(&self, a: &PyTangentVector, b: &PyTangentVector) -> PyResult<f64> {
        geometry::ricci_trace(&a.inner, &b.inner, &tol()).map_err(to_py_err)
    }

    /// Curvature tensor value `R(a, b, eta)`.
    fn curvature(
        &self,
        a: &PyTangentVector,
        b: &PyTangentVector,
        eta: &PyTangentVector,
    ) -> PyResult<PyTangentVector> {
        Ok(PyTangentVector {
            inner: geometry::curvature(&a.inner, &b.inner, &eta.inner, &tol())
                .map_err(to_py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "GrassmannPoint(N={}, rank={}, {})",
            self.inner.size(),
            self.inner.rank(),
            self.inner.field()
        )
    }
}

/// A tangent vector anchored at a Grassmann point.
#[pyclass(name = "TangentVector", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTangentVector {
    inner: TangentVector,
}

#[pymethods]
impl PyTangentVector {
    fn base(&self) -> PyGrassmannPoint {
        PyGrassmannPoint {
            inner: self.inner.base().clone(),
        }
    }

    fn matrix(&self) -> PyMatrix {
        PyMatrix {
            inner: self.inner.matrix().clone(),
        }
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn scale(&self, s: f64) -> Self {
        Self {
            inner: self.inner.scale(s),
        }
    }

    /// Geodesic point with this initial velocity at time `t`.
    fn geodesic(&self, t: f64) -> PyResult<PyGrassmannPoint> {
        Ok(PyGrassmannPoint {
            inner: geometry::geodesic(&self.inner, t, &tol()).map_err(to_py_err)?,
        })
    }

    /// Geodesic velocity at time `t`, anchored at the geodesic point.
    fn geodesic_velocity(&self, t: f64) -> PyResult<PyTangentVector> {
        Ok(Self {
            inner: geometry::geodesic_velocity(&self.inner, t, &tol()).map_err(to_py_err)?,
        })
    }

    /// Connection value on this and another tangent vector.
    fn connection(&self, other: &PyTangentVector) -> PyResult<PyMatrix> {
        Ok(PyMatrix {
            inner: geometry::connection(&self.inner, &other.inner).map_err(to_py_err)?,
        })
    }

    /// Parallel transport of `w` along this geodesic over `[0, t]`.
    #[pyo3(signature = (w, t, steps = 200))]
    fn transport(&self, w: &PyTangentVector, t: f64, steps: usize) -> PyResult<PyTangentVector> {
        Ok(Self {
            inner: geometry::parallel_transport(&self.inner, &w.inner, t, steps, &tol())
                .map_err(to_py_err)?,
        })
    }

    /// Complex structure `J(eta) = i eta (2 xi - Id)`; complex field only.
    fn j_apply(&self) -> PyResult<PyTangentVector> {
        Ok(Self {
            inner: complexgrass::j_apply(&self.inner, &tol()).map_err(to_py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "TangentVector(N={}, norm={:.6})",
            self.inner.base().size(),
            self.inner.norm()
        )
    }
}

/// Riemannian gradient ascent onto the dominant rank-`n` invariant
/// subspace of a self-adjoint matrix. Returns a dict with the final point,
/// objective, gradient norm, iteration count, convergence flag, and the
/// `(iteration, objective, grad_norm)` trace.
#[pyfunction]
#[pyo3(name = "dominant_subspace")]
#[pyo3(signature = (matrix, rank, seed = 0, step_size = 0.1, max_iters = 500, grad_tol = 1e-8))]
fn dominant_subspace_py(
    py: Python<'_>,
    matrix: &PyMatrix,
    rank: usize,
    seed: u64,
    step_size: f64,
    max_iters: usize,
    grad_tol: f64,
) -> PyResult<Py<PyDict>> {
    let cfg = DescentConfig {
        step_size,
        max_iters,
        grad_tol,
        seed,
    };
    let trace = dominant_subspace(&matrix.inner, rank, &cfg).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item(
        "final_point",
        PyGrassmannPoint {
            inner: trace.final_point.clone(),
        }
        .into_pyobject(py)?,
    )?;
    out.set_item("objective", trace.final_objective())?;
    out.set_item("grad_norm", trace.final_grad_norm())?;
    out.set_item("iterations", trace.iterations())?;
    out.set_item("converged", trace.converged)?;
    let rows: Vec<(usize, f64, f64)> = trace
        .iterates
        .iter()
        .map(|r| (r.iteration, r.objective, r.grad_norm))
        .collect();
    out.set_item("trace", rows)?;
    Ok(out.into())
}

/// Run a verification suite; returns the list of checks as dicts.
#[pyfunction]
#[pyo3(signature = (suite = "all", dim = 6, rank = 2, field = "real", seed = 0, trials = 25))]
fn verify_suite(
    py: Python<'_>,
    suite: &str,
    dim: usize,
    rank: usize,
    field: &str,
    seed: u64,
    trials: usize,
) -> PyResult<Vec<Py<PyDict>>> {
    let suite: Suite = suite.parse().map_err(to_py_err)?;
    let params = SuiteParams {
        dim,
        rank,
        field: parse_field(field)?,
        seed,
        trials,
        tol: tol(),
    };
    let (report, _notes) =
        run_suite(suite, &params).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    report
        .checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", &c.name)?;
            d.set_item("trials", c.trials)?;
            d.set_item("max_error", c.max_error)?;
            d.set_item("tolerance", c.tolerance)?;
            d.set_item("passed", c.passed)?;
            Ok(d.into())
        })
        .collect()
}

/// Seeded random orthonormal frame as a plain matrix.
#[pyfunction]
fn random_frame(n: usize, rank: usize, field: &str, seed: u64) -> PyResult<PyMatrix> {
    let mut rng = Rng::new(seed);
    Ok(PyMatrix {
        inner: random_orthonormal_frame(&mut rng, n, rank, parse_field(field)?)
            .map_err(to_py_err)?,
    })
}

#[pymodule]
fn grassgeo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyGrassmannPoint>()?;
    m.add_class::<PyTangentVector>()?;
    m.add_function(wrap_pyfunction!(dominant_subspace_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    m.add_function(wrap_pyfunction!(random_frame, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
