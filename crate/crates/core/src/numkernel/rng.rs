//! Seeded random sampling for test fixtures and demos.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::{gram_schmidt, Field, Matrix};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Deterministic random generator.
///
/// Backed by the counter-based ChaCha8 stream cipher seeded from a single
/// 64-bit value, so identical seeds produce identical streams on every
/// platform for the same build. Gaussian variates come from the ziggurat
/// sampler of `rand_distr`.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent generator for a parallel task; sub-seed `seed + k`.
    pub fn split(&self, k: u64) -> Self {
        Self::new(self.seed.wrapping_add(k))
    }

    /// Standard normal variate.
    pub fn gaussian(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }
}

/// Matrix with independent standard normal entries (real and imaginary
/// parts separately for the complex field).
pub fn random_gaussian(rng: &mut Rng, rows: usize, cols: usize, field: Field) -> Matrix {
    let mut m = Matrix::zeros(rows, cols, field);
    for r in 0..rows {
        for c in 0..cols {
            let re = rng.gaussian();
            let im = match field {
                Field::Real => 0.0,
                Field::Complex => rng.gaussian(),
            };
            m.set(r, c, Complex64::new(re, im));
        }
    }
    m
}

/// Random self-adjoint matrix, `(g + g*)/2` of a Gaussian sample.
pub fn random_hermitian(rng: &mut Rng, n: usize, field: Field) -> Matrix {
    random_gaussian(rng, n, n, field).symmetrize()
}

/// `N x n` matrix with orthonormal columns, via Gram-Schmidt with one
/// re-orthogonalization pass. Requires `n <= N`.
pub fn random_orthonormal_frame(rng: &mut Rng, big_n: usize, n: usize, field: Field) -> Result<Matrix> {
    if n > big_n {
        return Err(Error::InvalidArgument(format!(
            "frame width {n} exceeds ambient dimension {big_n}"
        )));
    }
    if n == 0 {
        return Ok(Matrix::zeros(big_n, 0, field));
    }
    let g = random_gaussian(rng, big_n, n, field);
    gram_schmidt(&g)
}
