//! Acceptance suite: the binding numerical contracts of the crate, one test
//! per criterion, each printing a PASS/FAIL line. All checks are
//! property-based at desk scale in double precision.

use std::time::Instant;

use grassgeo::complexgrass;
use grassgeo::grassmann::geometry::{
    connection, connection_form, curvature, geodesic, geodesic_pair, ricci, ricci_trace,
    sectional, symmetry, tangent_basis,
};
use grassgeo::grassmann::{
    frame_from_point, random_point, random_tangent, tangent_condition_flags, GrassmannPoint,
    TangentVector,
};
use grassgeo::numkernel::{
    eig_hermitian, hs_inner, random_hermitian, random_orthonormal_frame, Field, Matrix, Rng,
};
use grassgeo::optdemo::{dominant_subspace, DescentConfig};
use grassgeo::oracles::{
    connection_oracle, geodesic_ode_oracle, grassmann_curvature_oracle, tauto_curvature_oracle,
    FdConfig,
};
use grassgeo::orthogroup::{
    fibre_geodesic_defect, o_random_tangent, submersion, submersion_coadjoint,
    submersion_differential, vertical_project, OrthPoint, SubmersionSetup,
};
use grassgeo::verify::tangent_rank;
use grassgeo::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn report(number: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {number:02} {name}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number:02} {name} failed: {detail}");
}

fn unit_tangent(rng: &mut Rng, xi: &GrassmannPoint) -> TangentVector {
    let t = random_tangent(rng, xi, &tol()).unwrap();
    let n = t.norm();
    if n > 1e-12 {
        t.scale(1.0 / n)
    } else {
        t
    }
}

/// The three-term elementary fixture: rank-1 base in R^3 with the two
/// symmetric elementary tangents.
fn elementary_fixture() -> (GrassmannPoint, TangentVector, TangentVector) {
    let xi = GrassmannPoint::new(Matrix::diagonal(&[1.0, 0.0, 0.0]), &tol()).unwrap();
    let a = Matrix::from_rows_real(&[
        vec![0.0, 1.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0],
    ])
    .unwrap();
    let b = Matrix::from_rows_real(&[
        vec![0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
    ])
    .unwrap();
    (
        xi.clone(),
        TangentVector::new(&xi, a, &tol()).unwrap(),
        TangentVector::new(&xi, b, &tol()).unwrap(),
    )
}

#[test]
fn acceptance_01_tangent_characterization() {
    let start = Instant::now();
    let mut rng = Rng::new(1);
    let mut disagreements = 0usize;
    let mut ortho_err = 0.0f64;
    let mut split_err = 0.0f64;
    let mut trials = 0usize;
    'outer: for round in 0.. {
        for n in 2..=8usize {
            if trials >= 500 {
                break 'outer;
            }
            trials += 1;
            let rank = (round + n) % (n + 1);
            let xi = random_point(&mut rng, n, rank, Field::Real, &tol()).unwrap();
            let raw = random_hermitian(&mut rng, n, Field::Real);
            let eta = if trials.is_multiple_of(2) {
                raw
            } else {
                xi.tangent_project(&raw, &tol()).unwrap().matrix().clone()
            };
            let flags = tangent_condition_flags(&xi, &eta, 1e-9, &tol()).unwrap();
            if flags.iter().any(|&f| f != flags[0]) {
                disagreements += 1;
            }
            let t = xi.tangent_project(&eta, &tol()).unwrap();
            let nrm = xi.normal_project(&eta);
            ortho_err = ortho_err.max(hs_inner(t.matrix(), &nrm).unwrap().abs());
            split_err = split_err
                .max((&(&eta.symmetrize() - t.matrix()) - &nrm).frobenius());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = disagreements == 0 && ortho_err <= 1e-12 && split_err == 0.0 && elapsed < 5.0;
    report(
        1,
        "tangent_characterization",
        ok,
        &format!(
            "trials={trials} disagreements={disagreements} ortho={ortho_err:.2e} split={split_err:.1e} elapsed={elapsed:.2}s"
        ),
    );
}

#[test]
fn acceptance_02_connection() {
    let mut rng = Rng::new(2);
    let cfg = FdConfig::default();
    let mut fd_err = 0.0f64;
    let mut normal_err = 0.0f64;
    for k in 0..100 {
        let n = 3 + k % 5;
        let xi = random_point(&mut rng, n, 1 + k % (n - 1), Field::Real, &tol()).unwrap();
        let eta = unit_tangent(&mut rng, &xi);
        let alpha = unit_tangent(&mut rng, &xi);
        let closed = connection(&eta, &alpha).unwrap();
        let fd = connection_oracle(&eta, &alpha, false, &cfg, &tol()).unwrap();
        fd_err = fd_err.max((&fd - &closed).frobenius() / closed.frobenius().max(1.0));
        let comm = (&(&closed * xi.matrix()) - &(xi.matrix() * &closed)).frobenius();
        normal_err = normal_err.max(comm / closed.frobenius().max(1.0));
    }
    let ok = fd_err <= 1e-6 && normal_err <= 1e-10;
    report(
        2,
        "connection",
        ok,
        &format!("fd={fd_err:.2e} normal={normal_err:.2e}"),
    );
}

#[test]
fn acceptance_03_curvature() {
    let mut rng = Rng::new(3);
    let cfg = FdConfig::default();
    let mut curv_err = 0.0f64;
    let mut tauto_err = 0.0f64;
    for k in 0..100 {
        let n = 3 + k % 4;
        let xi = random_point(&mut rng, n, 1 + k % (n - 1), Field::Real, &tol()).unwrap();
        let a = unit_tangent(&mut rng, &xi);
        let b = unit_tangent(&mut rng, &xi);
        let e = unit_tangent(&mut rng, &xi);
        let closed = curvature(&a, &b, &e, &tol()).unwrap();
        let fd = grassmann_curvature_oracle(&a, &b, &e, &cfg, &tol()).unwrap();
        curv_err = curv_err
            .max((&fd - closed.matrix()).frobenius() / closed.matrix().frobenius().max(1.0));

        let w = frame_from_point(&xi, &tol()).unwrap().frame().column(0);
        let tauto = grassgeo::grassmann::geometry::tauto_curvature(&a, &b, &w, &tol()).unwrap();
        let tauto_fd = tauto_curvature_oracle(&a, &b, &w, &cfg, &tol()).unwrap();
        tauto_err =
            tauto_err.max((&tauto_fd - &tauto).frobenius() / tauto.frobenius().max(1.0));
    }

    // Elementary fixture, pure arithmetic.
    let (_, alpha, beta) = elementary_fixture();
    let r = curvature(&alpha, &beta, &alpha, &tol()).unwrap();
    let fixture_err = (r.matrix() - beta.matrix()).frobenius();
    let s = sectional(&alpha, &beta).unwrap();
    let riem_err = (s.riem - 2.0).abs();

    let ok = curv_err <= 1e-5 && tauto_err <= 1e-5 && fixture_err <= 1e-12 && riem_err <= 1e-12;
    report(
        3,
        "curvature",
        ok,
        &format!(
            "fd={curv_err:.2e} tauto={tauto_err:.2e} fixture={fixture_err:.1e} riem={riem_err:.1e}"
        ),
    );
}

#[test]
fn acceptance_04_sectional() {
    let mut rng = Rng::new(4);
    let mut negativity = 0.0f64;
    for k in 0..1000 {
        let n = 3 + k % 5;
        let xi = random_point(&mut rng, n, 1 + k % (n - 1), Field::Real, &tol()).unwrap();
        let a = random_tangent(&mut rng, &xi, &tol()).unwrap();
        let b = random_tangent(&mut rng, &xi, &tol()).unwrap();
        negativity = negativity.max(-sectional(&a, &b).unwrap().riem);
    }
    // Commuting pairs are flat: pair each tangent with its own cube.
    let mut commuting = 0.0f64;
    for k in 0..100 {
        let n = 3 + k % 4;
        let xi = random_point(&mut rng, n, 1 + k % (n - 1), Field::Real, &tol()).unwrap();
        let a = unit_tangent(&mut rng, &xi);
        let cube = &(a.matrix() * a.matrix()) * a.matrix();
        let b = TangentVector::new(&xi, cube, &tol()).unwrap();
        let commutator = (&(a.matrix() * b.matrix()) - &(b.matrix() * a.matrix())).frobenius();
        assert!(commutator <= 1e-12);
        commuting = commuting.max(sectional(&a, &b).unwrap().riem.abs());
    }
    let ok = negativity <= 1e-12 && commuting <= 1e-10;
    report(
        4,
        "sectional",
        ok,
        &format!("negativity={negativity:.2e} commuting={commuting:.2e}"),
    );
}

#[test]
fn acceptance_05_ricci() {
    let mut rng = Rng::new(5);
    let mut err = 0.0f64;
    for n in 2..=8usize {
        for rank in 0..=n {
            let xi = random_point(&mut rng, n, rank, Field::Real, &tol()).unwrap();
            let a = random_tangent(&mut rng, &xi, &tol()).unwrap();
            let b = random_tangent(&mut rng, &xi, &tol()).unwrap();
            let closed = ricci(&a, &b).unwrap();
            let trace = ricci_trace(&a, &b, &tol()).unwrap();
            err = err.max((closed - trace).abs() / closed.abs().max(1.0));
        }
    }
    let (_, alpha, _) = elementary_fixture();
    let fixture = ricci(&alpha, &alpha).unwrap();
    let fixture_trace = ricci_trace(&alpha, &alpha, &tol()).unwrap();
    let ok = err <= 1e-8 && (fixture - 1.0).abs() <= 1e-10 && (fixture_trace - 1.0).abs() <= 1e-10;
    report(
        5,
        "ricci",
        ok,
        &format!("closed_vs_trace={err:.2e} fixture={fixture} trace={fixture_trace:.12}"),
    );
}

#[test]
fn acceptance_06_geodesics() {
    let start = Instant::now();
    let mut rng = Rng::new(6);
    let mut membership = 0.0f64;
    let mut ode_defect = 0.0f64;
    let mut rk4_err = 0.0f64;
    let mut reversal = 0.0f64;
    let h = 1e-4;
    for k in 0..20 {
        let n = 3 + k % 4;
        let xi = random_point(&mut rng, n, 1 + k % (n - 1), Field::Real, &tol()).unwrap();
        let eta = unit_tangent(&mut rng, &xi);
        // (a) membership over [0, 2 pi] and (d) symmetry reversal.
        for j in 0..=8 {
            let t = j as f64 * std::f64::consts::TAU / 8.0;
            let p = geodesic(&eta, t, &tol()).unwrap();
            let m = p.matrix();
            membership = membership
                .max((m - &m.adjoint()).frobenius())
                .max((&(m * m) - m).frobenius());
            let reflected = symmetry(&xi, &p, &tol()).unwrap();
            let reversed = geodesic(&eta, -t, &tol()).unwrap();
            reversal = reversal.max((reflected.matrix() - reversed.matrix()).frobenius());
        }
        // (b) geodesic equation by central second differences.
        for t in [0.0, 0.9] {
            let plus = geodesic(&eta, t + h, &tol()).unwrap();
            let (mid, vel) = geodesic_pair(&eta, t, &tol()).unwrap();
            let minus = geodesic(&eta, t - h, &tol()).unwrap();
            let fdd = (&(plus.matrix() + minus.matrix()) - &mid.matrix().scale(2.0))
                .scale(1.0 / (h * h));
            let th = connection_form(mid.matrix(), vel.matrix(), vel.matrix());
            ode_defect = ode_defect.max((&fdd - &th).frobenius() / th.frobenius().max(1.0));
        }
        // (c) Runge-Kutta oracle.
        if k < 8 {
            let t = 1.0;
            let ode = geodesic_ode_oracle(&eta, t, 250, &tol()).unwrap();
            let closed = geodesic(&eta, t, &tol()).unwrap();
            rk4_err = rk4_err.max((ode.matrix() - closed.matrix()).frobenius());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = membership <= 1e-9
        && ode_defect <= 1e-5
        && rk4_err <= 1e-6
        && reversal <= 1e-9
        && elapsed < 10.0;
    report(
        6,
        "geodesics",
        ok,
        &format!(
            "membership={membership:.2e} ode={ode_defect:.2e} rk4={rk4_err:.2e} reversal={reversal:.2e} elapsed={elapsed:.2}s"
        ),
    );
}

#[test]
fn acceptance_07_submersion() {
    let mut rng = Rng::new(7);
    let mut round_trip = 0.0f64;
    let mut fibre = 0.0f64;
    for field in [Field::Real, Field::Complex] {
        for k in 0..100 {
            let n = 3 + k % 3;
            let rank = 1 + k % (n - 1);
            let mut diag = vec![0.0; n];
            for d in diag.iter_mut().take(rank) {
                *d = 1.0;
            }
            let pi = Matrix::diagonal(&diag);
            let pi = match field {
                Field::Real => pi,
                Field::Complex => pi.to_complex(),
            };
            let setup = SubmersionSetup::new(GrassmannPoint::new(pi, &tol()).unwrap());
            let u = random_orthonormal_frame(&mut rng, n, n, field).unwrap();
            let xi = OrthPoint::new(u, &tol()).unwrap();
            let phi = submersion(&setup, &xi, &tol()).unwrap();

            let beta = random_tangent(&mut rng, &phi, &tol()).unwrap();
            let lift = submersion_coadjoint(&setup, &xi, &beta, &tol()).unwrap();
            let back = submersion_differential(&setup, &xi, &lift, &tol()).unwrap();
            round_trip = round_trip
                .max((back.matrix() - beta.matrix()).frobenius() / beta.norm().max(1.0));

            let a = vertical_project(&setup, &xi, &o_random_tangent(&mut rng, &xi), &tol())
                .unwrap();
            let b = vertical_project(&setup, &xi, &o_random_tangent(&mut rng, &xi), &tol())
                .unwrap();
            fibre = fibre.max(
                fibre_geodesic_defect(&setup, &xi, &a, &b, &tol()).unwrap()
                    / (1.0 + a.frobenius() * b.frobenius()),
            );
        }
    }
    let ok = round_trip <= 1e-10 && fibre <= 1e-9;
    report(
        7,
        "submersion",
        ok,
        &format!("round_trip={round_trip:.2e} fibre={fibre:.2e}"),
    );
}

#[test]
fn acceptance_08_complex_kahler() {
    let mut rng = Rng::new(8);
    let mut j_squared = 0.0f64;
    let mut j_isometry = 0.0f64;
    let mut nabla_j = 0.0f64;
    let mut holomorphic = 0.0f64;
    let mut realified = 0.0f64;
    let mut dim_err = 0usize;
    for k in 0..50 {
        let n = 2 + k % 3;
        let rank = 1 + k % n.min(2);
        let xi = random_point(&mut rng, n, rank, Field::Complex, &tol()).unwrap();
        let a = unit_tangent(&mut rng, &xi);
        let b = unit_tangent(&mut rng, &xi);

        let ja = complexgrass::j_apply(&a, &tol()).unwrap();
        let jja = complexgrass::j_apply(&ja, &tol()).unwrap();
        j_squared = j_squared.max((jja.matrix() + a.matrix()).frobenius());

        let jb = complexgrass::j_apply(&b, &tol()).unwrap();
        j_isometry = j_isometry.max(
            (hs_inner(a.matrix(), b.matrix()).unwrap()
                - hs_inner(ja.matrix(), jb.matrix()).unwrap())
            .abs(),
        );

        nabla_j = nabla_j.max(complexgrass::nabla_j_defect(&a, &b, &tol()).unwrap());

        let f = frame_from_point(&xi, &tol()).unwrap();
        holomorphic = holomorphic
            .max(complexgrass::holomorphic_chart_defect(&f, &xi, &a, &tol()).unwrap());

        let d = complexgrass::totally_geodesic_defect(&a, &b, 0.3, &tol()).unwrap();
        realified = realified.max(d.connection);

        if xi.manifold_dim() != 2 * rank * (n - rank) {
            dim_err += 1;
        }
    }
    let ok = j_squared <= 1e-12
        && j_isometry <= 1e-12
        && nabla_j <= 1e-10
        && holomorphic <= 1e-8
        && realified <= 1e-10
        && dim_err == 0;
    report(
        8,
        "complex_kahler",
        ok,
        &format!(
            "J2={j_squared:.2e} isometry={j_isometry:.2e} nablaJ={nabla_j:.2e} chart={holomorphic:.2e} realified={realified:.2e} dim_errors={dim_err}"
        ),
    );
}

#[test]
fn acceptance_09_dimension_count() {
    let mut rng = Rng::new(9);
    let mut failures = 0usize;
    let mut checked = 0usize;
    for field in [Field::Real, Field::Complex] {
        for n in 2..=6usize {
            for rank in 0..=n {
                let xi = random_point(&mut rng, n, rank, field, &tol()).unwrap();
                let expected = xi.manifold_dim();
                let measured = tangent_rank(&xi, &tol()).unwrap();
                let basis = tangent_basis(&xi, &tol()).unwrap();
                checked += 1;
                if measured != expected || basis.len() != expected {
                    failures += 1;
                }
            }
        }
    }
    let ok = failures == 0;
    report(
        9,
        "dimension_count",
        ok,
        &format!("checked={checked} failures={failures}"),
    );
}

#[test]
fn acceptance_10_optimization_demo() {
    let start = Instant::now();
    // Random self-adjoint with a controlled spectral gap at the cut.
    let mut rng = Rng::new(10);
    let eigenvalues = [4.0, 3.2, 2.4, 2.3, 1.1, 0.4, -0.8, -1.5];
    let q = random_orthonormal_frame(&mut rng, 8, 8, Field::Real).unwrap();
    let a = (&(&q * &Matrix::diagonal(&eigenvalues)) * &q.adjoint()).symmetrize();

    let trace = dominant_subspace(&a, 3, &DescentConfig::default()).unwrap();
    let optimum: f64 = {
        let eig = eig_hermitian(&a, &tol()).unwrap();
        eig.eigenvalues.iter().rev().take(3).sum()
    };
    let objective_err = (trace.final_objective() - optimum).abs();
    let monotone = trace
        .iterates
        .windows(2)
        .all(|w| w[1].objective >= w[0].objective);
    let elapsed = start.elapsed().as_secs_f64();
    let ok = objective_err <= 1e-6 && monotone && elapsed < 5.0;
    report(
        10,
        "optimization_demo",
        ok,
        &format!(
            "objective_err={objective_err:.2e} monotone={monotone} iters={} elapsed={elapsed:.2}s",
            trace.iterations()
        ),
    );
}
