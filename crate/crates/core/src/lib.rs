//! Explicit differential geometry of real and complex Grassmann manifolds,
//! computed in their embedding into the space of self-adjoint operators.
//!
//! A subspace `F` of a finite-dimensional real or Hermitian space `E` is
//! identified with the orthogonal projection onto it. The Grassmannian `G(E)`
//! is then the set of self-adjoint idempotent matrices inside `L(E;E)` with
//! the Hilbert-Schmidt inner product, and every geometric object has a
//! closed matrix formula: tangent and normal projections, graph charts, the
//! canonical connection, curvature tensors, geodesics, point symmetries,
//! the tautological bundle, the submersion from the orthogonal/unitary
//! group, and the complex structure making the complex Grassmannian a
//! Kähler manifold.
//!
//! Every closed form shipped here is paired with an independent
//! finite-difference or ODE-integration oracle in [`oracles`], and the
//! [`verify`] module bundles those cross-checks into machine-readable report
//! suites.

pub mod complexgrass;
pub mod config;
pub mod grassmann;
pub mod numkernel;
pub mod optdemo;
pub mod oracles;
pub mod orthogroup;
pub mod verify;

mod error;

pub use config::Tolerances;
pub use error::{Error, Result};
