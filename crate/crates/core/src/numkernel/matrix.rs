//! Dense matrices over the real or complex field.
//!
//! Storage is always a row-major `Vec<Complex64>`; a [`Field`] tag records
//! whether the matrix is real (all imaginary parts exactly zero) or complex.
//! Binary operations require matching fields; promotion is always explicit
//! through [`Matrix::to_complex`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar field of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(Error::Parse(format!("unknown field `{other}`"))),
        }
    }
}

/// Dense rectangular matrix. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Self {
            rows,
            cols,
            field,
            entries: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// Builds a real matrix from a closure over `(row, col)`.
    pub fn from_fn_real(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols, Field::Real);
        for r in 0..rows {
            for c in 0..cols {
                m.entries[r * cols + c] = Complex64::new(f(r, c), 0.0);
            }
        }
        m
    }

    /// Builds a complex matrix from a closure over `(row, col)`.
    pub fn from_fn_complex(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Complex64,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, Field::Complex);
        for r in 0..rows {
            for c in 0..cols {
                m.entries[r * cols + c] = f(r, c);
            }
        }
        m
    }

    pub fn from_rows_real(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged rows".into()));
        }
        Ok(Self::from_fn_real(r, c, |i, j| rows[i][j]))
    }

    pub fn from_rows_complex(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged rows".into()));
        }
        Ok(Self::from_fn_complex(r, c, |i, j| rows[i][j]))
    }

    /// Real square matrix with the given diagonal.
    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn_real(n, n, |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    /// Real part of an entry; the whole entry for real matrices.
    #[inline]
    pub fn get_re(&self, r: usize, c: usize) -> f64 {
        self.get(r, c).re
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, v: Complex64) {
        debug_assert!(self.field == Field::Complex || v.im == 0.0);
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    fn assert_same_shape(&self, other: &Self, op: &str) {
        assert_eq!(
            (self.rows, self.cols, self.field),
            (other.rows, other.cols, other.field),
            "{op}: operands must have identical shape and field"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other, "add");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { entries, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other, "sub");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { entries, ..*self }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| -a).collect();
        Self { entries, ..*self }
    }

    pub fn scale(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|a| a * s).collect();
        Self { entries, ..*self }
    }

    /// Scales by a complex number; the result is tagged complex.
    pub fn scale_complex(&self, s: Complex64) -> Self {
        let entries = self.entries.iter().map(|a| a * s).collect();
        Self {
            entries,
            field: Field::Complex,
            ..*self
        }
    }

    /// Multiplication by the imaginary unit. Requires a complex matrix.
    pub fn i_times(&self) -> Self {
        debug_assert_eq!(self.field, Field::Complex, "i_times needs a complex matrix");
        self.scale_complex(Complex64::I)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul: inner dimensions must agree ({}x{} * {}x{})",
            self.rows, self.cols, other.rows, other.cols
        );
        assert_eq!(self.field, other.field, "matmul: operands must share a field");
        let mut out = Self::zeros(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[r * self.cols + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.entries[r * other.cols + c] += a * other.entries[k * other.cols + c];
                }
            }
        }
        out
    }

    /// Conjugate transpose. An involution that reverses products.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.entries[r * self.cols + c].conj();
            }
        }
        out
    }

    /// `(a + a*)/2`; only meaningful for square matrices.
    pub fn symmetrize(&self) -> Self {
        self.add(&self.adjoint()).scale(0.5)
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        // fold rather than sum: the empty sum must be +0.0, not -0.0.
        self.entries
            .iter()
            .fold(0.0, |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Hilbert-Schmidt inner product `Re tr(a* b)` without any checking.
    /// Operands must have identical shape; fields may differ only when one
    /// side is the other's promotion.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "dot: operands must have identical shape"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |acc, (a, b)| acc + (a.conj() * b).re)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.is_square() && self.sub(&self.adjoint()).frobenius() <= tol
    }

    /// Largest imaginary magnitude; exactly zero for real-tagged matrices.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn to_complex(&self) -> Self {
        Self {
            field: Field::Complex,
            ..self.clone()
        }
    }

    /// Reinterprets as real, requiring all imaginary parts below `tol`;
    /// imaginary parts are dropped.
    pub fn to_real(&self, tol: f64) -> Result<Self> {
        let worst = self.max_imag();
        if worst > tol {
            return Err(Error::FieldMismatch(format!(
                "matrix has imaginary parts up to {worst:.3e}"
            )));
        }
        Ok(Self {
            field: Field::Real,
            entries: self.entries.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
            ..*self
        })
    }

    /// Extracts a block of columns `[start, start+len)`.
    pub fn columns(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.cols);
        let mut out = Self::zeros(self.rows, len, self.field);
        for r in 0..self.rows {
            for c in 0..len {
                out.entries[r * len + c] = self.get(r, start + c);
            }
        }
        out
    }

    /// Concatenates columns of `self` and `other`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hcat: row counts must agree");
        assert_eq!(self.field, other.field, "hcat: fields must agree");
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[r * cols + c] = self.get(r, c);
            }
            for c in 0..other.cols {
                out.entries[r * cols + self.cols + c] = other.get(r, c);
            }
        }
        out
    }

    /// Single column as an `rows x 1` matrix.
    pub fn column(&self, c: usize) -> Self {
        self.columns(c, 1)
    }

    /// Inverse of a square matrix by Gauss-Jordan elimination with partial
    /// pivoting. The 0x0 matrix is its own inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.field);
        for col in 0..n {
            let (pivot_row, pivot_abs) = (col..n)
                .map(|r| (r, a.get(r, col).norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .expect("non-empty pivot search");
            if pivot_abs < 1e-300 {
                return Err(Error::Singular { pivot: pivot_abs });
            }
            if pivot_row != col {
                for c in 0..n {
                    a.entries.swap(pivot_row * n + c, col * n + c);
                    inv.entries.swap(pivot_row * n + c, col * n + c);
                }
            }
            let pivot = a.get(col, col);
            for c in 0..n {
                a.entries[col * n + c] /= pivot;
                inv.entries[col * n + c] /= pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    let ac = a.entries[col * n + c];
                    let ic = inv.entries[col * n + c];
                    a.entries[r * n + c] -= factor * ac;
                    inv.entries[r * n + c] -= factor * ic;
                }
            }
        }
        if self.field == Field::Real {
            // Real input stays real through elimination.
            inv.field = Field::Real;
        }
        Ok(inv)
    }
}

/// Hilbert-Schmidt inner product `sum_k <a(x_k), b(x_k)> = Re tr(a* b)`.
///
/// The real part is returned for complex matrices, making this the real
/// inner product induced on `L(E;E)` by the underlying real structure.
pub fn hs_inner(a: &Matrix, b: &Matrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{}", a.rows(), a.cols()),
            got: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!(
            "hs_inner over {} and {}",
            a.field(),
            b.field()
        )));
    }
    Ok(a.dot(b))
}

/// Column Gram-Schmidt with one re-orthogonalization pass.
///
/// Fails with [`Error::Singular`] when the columns are numerically rank
/// deficient.
pub fn gram_schmidt(m: &Matrix) -> Result<Matrix> {
    let (rows, cols) = m.shape();
    let mut q = m.clone();
    for c in 0..cols {
        // Two passes keep the loss of orthogonality at the 1e-15 level.
        for _pass in 0..2 {
            for prev in 0..c {
                let mut proj = Complex64::ZERO;
                for r in 0..rows {
                    proj += q.get(r, prev).conj() * q.get(r, c);
                }
                for r in 0..rows {
                    let v = q.get(r, c) - proj * q.get(r, prev);
                    q.set(r, c, v);
                }
            }
        }
        let norm = (0..rows).map(|r| q.get(r, c).norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::Singular { pivot: norm });
        }
        for r in 0..rows {
            let v = q.get(r, c) / norm;
            q.set(r, c, v);
        }
    }
    Ok(q)
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix::add(self, rhs)
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix::sub(self, rhs)
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl std::ops::Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::neg(self)
    }
}
