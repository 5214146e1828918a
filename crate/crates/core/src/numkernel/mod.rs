//! Numerical substrate: dense real/complex matrices, adjoints,
//! Hilbert-Schmidt inner products, Hermitian eigendecomposition, matrix
//! trigonometric functions, seeded random sampling, and text serialization.

mod eig;
mod io;
mod matrix;
mod rng;

pub use eig::{eig_hermitian, matrix_trig, EigenDecomposition};
pub use io::{read_matrix, read_matrix_file, write_matrix, write_matrix_file};
pub use matrix::{gram_schmidt, hs_inner, Field, Matrix};
pub use rng::{random_gaussian, random_hermitian, random_orthonormal_frame, Rng};
