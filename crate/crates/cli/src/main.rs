//! Command-line interface: property suites, single geometric computations,
//! and the subspace-optimization demo.
//!
//! Exit codes: 0 success / all checks passed, 1 check failure, 2 usage
//! error, 3 invalid input data.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grassgeo::grassmann::geometry::{curvature, geodesic, ricci, ricci_trace, sectional};
use grassgeo::grassmann::{GrassmannPoint, TangentVector};
use grassgeo::numkernel::{read_matrix_file, write_matrix, Field};
use grassgeo::optdemo::{dominant_subspace, DescentConfig};
use grassgeo::oracles::geodesic_ode_oracle;
use grassgeo::verify::{run_suite, Report, Suite, SuiteParams};
use grassgeo::Tolerances;

#[derive(Parser)]
#[command(
    name = "grassgeo",
    version,
    about = "Differential geometry of Grassmann manifolds in operator space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate the closed-form geodesic at one time.
    Geodesic(GeodesicArgs),
    /// Evaluate curvature quantities at a point.
    Curvature(CurvatureArgs),
    /// Riemannian gradient ascent onto a dominant invariant subspace.
    Optimize(OptimizeArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Ambient dimension N.
    #[arg(long = "dim", default_value_t = 6)]
    dim: usize,
    /// Subspace rank n.
    #[arg(long = "rank", default_value_t = 2)]
    rank: usize,
    /// Scalar field of the random fixtures.
    #[arg(long = "field", default_value = "real")]
    field: String,
    /// Seed for all randomized checks.
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
    /// Fixture count per check.
    #[arg(long = "trials", default_value_t = 100)]
    trials: usize,
    /// Suite: all | grassmann | complex | orthogroup | oracles.
    #[arg(long = "suite", default_value = "all")]
    suite: String,
    /// Write the JSON report here.
    #[arg(long = "json")]
    json: Option<PathBuf>,
    /// Override the validation tolerance.
    #[arg(long = "tol")]
    tol: Option<f64>,
}

#[derive(Args)]
struct GeodesicArgs {
    /// Point file (matrix text format, optional `point` header).
    #[arg(long = "point")]
    point: PathBuf,
    /// Tangent file (matrix text format, optional `tangent` header).
    #[arg(long = "tangent")]
    tangent: PathBuf,
    /// Evaluation time.
    #[arg(long = "t")]
    t: f64,
    /// Print the Runge-Kutta oracle result and its discrepancy instead.
    #[arg(long = "oracle")]
    oracle: bool,
}

#[derive(Args)]
struct CurvatureArgs {
    #[arg(long = "point")]
    point: PathBuf,
    /// First tangent file.
    #[arg(long = "a")]
    a: PathBuf,
    /// Second tangent file.
    #[arg(long = "b")]
    b: PathBuf,
    /// Third tangent file for the full curvature tensor.
    #[arg(long = "eta")]
    eta: Option<PathBuf>,
    /// Print `riem normalized` for the plane spanned by a and b.
    #[arg(long = "sectional", conflicts_with_all = ["ricci", "eta"])]
    sectional: bool,
    /// Print the closed-form and trace-oracle Ricci values.
    #[arg(long = "ricci", conflicts_with_all = ["sectional", "eta"])]
    ricci: bool,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Self-adjoint matrix file.
    #[arg(long = "matrix")]
    matrix: PathBuf,
    /// Subspace rank to optimize over.
    #[arg(long = "rank")]
    rank: usize,
    /// Seed for the starting frame.
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
    /// Write the iteration trace as CSV.
    #[arg(long = "csv")]
    csv: Option<PathBuf>,
}

enum CliError {
    /// Exit 1: a verification check failed.
    CheckFailure,
    /// Exit 2: invalid flag combination.
    Usage(String),
    /// Exit 3: input data did not validate.
    Data(String),
}

impl From<grassgeo::Error> for CliError {
    fn from(e: grassgeo::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Geodesic(args) => cmd_geodesic(args),
        Command::Curvature(args) => cmd_curvature(args),
        Command::Optimize(args) => cmd_optimize(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::CheckFailure) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("invalid input: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Validation tolerance: GRASSGEO_TOL overrides the default, an explicit
/// --tol overrides both.
fn tolerances(flag: Option<f64>) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Ok(env) = std::env::var("GRASSGEO_TOL") {
        let parsed: f64 = env
            .parse()
            .map_err(|_| CliError::Usage(format!("GRASSGEO_TOL is not a number: `{env}`")))?;
        tol.validation = parsed;
    }
    if let Some(t) = flag {
        tol.validation = t;
    }
    Ok(tol)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let field: Field = args
        .field
        .parse()
        .map_err(|e: grassgeo::Error| CliError::Usage(e.to_string()))?;
    let suite: Suite = args
        .suite
        .parse()
        .map_err(|e: grassgeo::Error| CliError::Usage(e.to_string()))?;
    if suite == Suite::Complex && field != Field::Complex {
        return Err(CliError::Usage(
            "--suite complex requires --field complex".into(),
        ));
    }
    if args.rank > args.dim {
        return Err(CliError::Usage(format!(
            "--rank {} exceeds --dim {}",
            args.rank, args.dim
        )));
    }
    let params = SuiteParams {
        dim: args.dim,
        rank: args.rank,
        field,
        seed: args.seed,
        trials: args.trials,
        tol: tolerances(args.tol)?,
    };
    let (report, notes) = run_suite(suite, &params).map_err(|e| CliError::Data(e.to_string()))?;
    print_report(&report);
    for note in &notes {
        println!("info: {note}");
    }
    if let Some(path) = args.json {
        let json =
            serde_json::to_string_pretty(&report).map_err(|e| CliError::Data(e.to_string()))?;
        std::fs::write(&path, json).map_err(|e| CliError::Data(e.to_string()))?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::CheckFailure)
    }
}

fn print_report(report: &Report) {
    println!(
        "suite seed={} N={} n={} field={} version={}",
        report.metadata.seed,
        report.metadata.dim,
        report.metadata.rank,
        report.metadata.field,
        report.metadata.version
    );
    for c in &report.checks {
        println!(
            "{} {} trials={} max_error={:.3e} tol={:.1e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.trials,
            c.max_error,
            c.tolerance
        );
    }
}

fn load_point(path: &std::path::Path, tol: &Tolerances) -> Result<GrassmannPoint, CliError> {
    let typed = grassgeo::grassmann::read_typed_matrix_file(path)?;
    GrassmannPoint::new(typed.matrix().clone(), tol).map_err(CliError::from)
}

fn load_tangent(
    path: &std::path::Path,
    base: &GrassmannPoint,
    tol: &Tolerances,
) -> Result<TangentVector, CliError> {
    let typed = grassgeo::grassmann::read_typed_matrix_file(path)?;
    TangentVector::new(base, typed.matrix().clone(), tol).map_err(CliError::from)
}

fn cmd_geodesic(args: GeodesicArgs) -> Result<(), CliError> {
    let tol = tolerances(None)?;
    let point = load_point(&args.point, &tol)?;
    let eta = load_tangent(&args.tangent, &point, &tol)?;
    if args.oracle {
        let steps = (200.0 * (args.t.abs() / std::f64::consts::PI).max(1.0)).ceil() as usize;
        let ode = geodesic_ode_oracle(&eta, args.t, steps, &tol)?;
        let closed = geodesic(&eta, args.t, &tol)?;
        print!("{}", write_matrix(ode.matrix()));
        println!(
            "discrepancy {:e}",
            (ode.matrix() - closed.matrix()).frobenius()
        );
    } else {
        let end = geodesic(&eta, args.t, &tol)?;
        print!("{}", write_matrix(end.matrix()));
    }
    Ok(())
}

fn cmd_curvature(args: CurvatureArgs) -> Result<(), CliError> {
    let tol = tolerances(None)?;
    let point = load_point(&args.point, &tol)?;
    let a = load_tangent(&args.a, &point, &tol)?;
    let b = load_tangent(&args.b, &point, &tol)?;
    if args.sectional {
        let s = sectional(&a, &b)?;
        match s.normalized {
            Some(normalized) => println!("{} {}", s.riem, normalized),
            None => {
                eprintln!(
                    "warning: degenerate plane (gram determinant {:.3e}); normalized value undefined",
                    s.gram
                );
                println!("{} nan", s.riem);
            }
        }
    } else if args.ricci {
        let trace = ricci_trace(&a, &b, &tol)?;
        match ricci(&a, &b) {
            Ok(closed) => println!("{closed} {trace}"),
            Err(_) => {
                eprintln!(
                    "warning: no closed-form Ricci over the complex field; printing the trace value only"
                );
                println!("nan {trace}");
            }
        }
    } else {
        let eta_path = args.eta.ok_or_else(|| {
            CliError::Usage("provide --eta FILE, or choose --sectional / --ricci".into())
        })?;
        let eta = load_tangent(&eta_path, &point, &tol)?;
        let r = curvature(&a, &b, &eta, &tol)?;
        print!("{}", write_matrix(r.matrix()));
    }
    Ok(())
}

fn cmd_optimize(args: OptimizeArgs) -> Result<(), CliError> {
    let matrix = read_matrix_file(&args.matrix)?;
    let cfg = DescentConfig {
        seed: args.seed,
        ..Default::default()
    };
    let trace = dominant_subspace(&matrix, args.rank, &cfg)?;
    println!(
        "objective {} iterations {} grad_norm {:e} converged {}",
        trace.final_objective(),
        trace.iterations(),
        trace.final_grad_norm(),
        trace.converged
    );
    if let Some(path) = args.csv {
        std::fs::write(&path, trace.to_csv()).map_err(|e| CliError::Data(e.to_string()))?;
    }
    Ok(())
}
