//! Frozen oracle fixtures.
//!
//! Finite-difference / ODE oracle outputs for fixed seeds are serialized
//! under `tests/fixtures/` as `<check>_<N>_<n>_<seed>.txt`. The test
//! recomputes each oracle, compares it against the matching closed form at
//! the oracle tolerance, and checks that the committed fixture still
//! describes the same value. Set `GRASSGEO_REGEN_FIXTURES=1` to rewrite the
//! files.

use std::path::PathBuf;

use grassgeo::grassmann::geometry::{connection, curvature, geodesic, tauto_curvature};
use grassgeo::grassmann::{frame_from_point, random_point, random_tangent};
use grassgeo::numkernel::{read_matrix_file, write_matrix_file, Field, Matrix, Rng};
use grassgeo::oracles::{
    connection_oracle, geodesic_ode_oracle, grassmann_curvature_oracle, tauto_curvature_oracle,
    FdConfig,
};
use grassgeo::Tolerances;

const N: usize = 5;
const RANK: usize = 2;
const SEED: u64 = 42;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn check_fixture(check: &str, value: &Matrix) {
    let name = format!("{check}_{N}_{RANK}_{SEED}.txt");
    let path = fixture_dir().join(name);
    if std::env::var("GRASSGEO_REGEN_FIXTURES").is_ok() {
        write_matrix_file(&path, value).unwrap();
        return;
    }
    let stored = read_matrix_file(&path)
        .unwrap_or_else(|e| panic!("missing or unreadable fixture {path:?}: {e}"));
    let defect = (&stored - value).frobenius();
    assert!(
        defect <= 1e-9 * value.frobenius().max(1.0),
        "{check}: fixture drifted by {defect:.3e}"
    );
}

#[test]
fn oracle_outputs_match_closed_forms_and_fixtures() {
    let tol = Tolerances::default();
    let cfg = FdConfig::default();
    let mut rng = Rng::new(SEED);

    let xi = random_point(&mut rng, N, RANK, Field::Real, &tol).unwrap();
    let eta = random_tangent(&mut rng, &xi, &tol).unwrap();
    let eta = eta.scale(1.0 / eta.norm());
    let alpha = random_tangent(&mut rng, &xi, &tol).unwrap();
    let beta = random_tangent(&mut rng, &xi, &tol).unwrap();

    let conn_fd = connection_oracle(&eta, &alpha, false, &cfg, &tol).unwrap();
    let conn = connection(&eta, &alpha).unwrap();
    assert!((&conn_fd - &conn).frobenius() <= cfg.tol * conn.frobenius().max(1.0));
    check_fixture("connection_fd", &conn_fd);

    let curv_fd = grassmann_curvature_oracle(&alpha, &beta, &eta, &cfg, &tol).unwrap();
    let curv = curvature(&alpha, &beta, &eta, &tol).unwrap();
    assert!((&curv_fd - curv.matrix()).frobenius() <= 1e-5 * curv.matrix().frobenius().max(1.0));
    check_fixture("curvature_fd", &curv_fd);

    let f = frame_from_point(&xi, &tol).unwrap();
    let w = f.frame().column(0);
    let tauto_fd = tauto_curvature_oracle(&alpha, &beta, &w, &cfg, &tol).unwrap();
    let tauto = tauto_curvature(&alpha, &beta, &w, &tol).unwrap();
    assert!((&tauto_fd - &tauto).frobenius() <= cfg.tol * tauto.frobenius().max(1.0));
    check_fixture("tauto_curvature_fd", &tauto_fd);

    let ode = geodesic_ode_oracle(&eta, 1.0, 250, &tol).unwrap();
    let closed = geodesic(&eta, 1.0, &tol).unwrap();
    assert!((ode.matrix() - closed.matrix()).frobenius() <= 1e-6);
    check_fixture("geodesic_ode", ode.matrix());
}
