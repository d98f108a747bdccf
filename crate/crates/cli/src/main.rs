//! `nonlocal`: local invariants, entangling power and perfect-entangler
//! classification of two-qubit gates from the command line.
//!
//! Exit codes: 0 success, 1 verification violations, 2 input error, 3 I/O error.

mod format;
mod matrix_file;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nonlocal_core::canonical::catalog_point;
use nonlocal_core::classify::TheoremReport;
use nonlocal_core::suites::{self, MonteCarloReport, RoutesReport, ScanRow};
use nonlocal_core::{EdgeId, WeylPoint};

use matrix_file::MatrixFile;
use report::{Analysis, AnalyzeTarget};

#[derive(Parser, Debug)]
#[command(
    name = "nonlocal",
    version,
    about = "Two-qubit gate invariants, entangling power and perfect-entangler classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one gate given by catalog name, Weyl point, or matrix file.
    Analyze(AnalyzeArgs),
    /// Sweep the Weyl chamber or an edge and write CSV.
    Scan(ScanArgs),
    /// Run a verification suite; exits 1 on any violation.
    Verify(VerifyArgs),
    /// List the named gates.
    Catalog,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["name", "point", "matrix"])))]
struct AnalyzeArgs {
    /// Catalog name, e.g. SWAP, DCNOT, SPE:0.7854, SWAP_ALPHA:0.5.
    #[arg(long)]
    name: Option<String>,
    /// Weyl point `c1,c2,c3` in radians (degrees with --deg).
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// JSON matrix document.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Read --point in degrees.
    #[arg(long)]
    deg: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Add a Monte-Carlo estimate with this many samples.
    #[arg(long)]
    mc: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("region").required(true).args(["chamber", "edge"])))]
struct ScanArgs {
    /// Lattice size per axis for a chamber sweep.
    #[arg(long, value_name = "GRID_N")]
    chamber: Option<usize>,
    /// Edge to sample: QP, MN, PN, LQ, LN or A2P.
    #[arg(long, requires = "steps")]
    edge: Option<String>,
    /// Number of evenly spaced points along the edge.
    #[arg(long)]
    steps: Option<usize>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Theorems,
    Routes,
    Montecarlo,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    /// Lattice size per axis (theorems).
    #[arg(long, default_value_t = 25)]
    grid: usize,
    /// Number of random chamber points (routes).
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Monte-Carlo samples per gate (montecarlo).
    #[arg(long, default_value_t = 200_000)]
    mc: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Also write the report as CSV to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Violations,
    Input(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Violations => 1,
            Failure::Input(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<nonlocal_core::Error> for Failure {
    fn from(e: nonlocal_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Scan(args) => scan(args),
        Command::Verify(args) => verify(args),
        Command::Catalog => write_stdout(&report::catalog_listing()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Input(msg) | Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Violations => {}
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

fn write_stdout(text: &str) -> CmdResult {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn write_output(path: Option<&PathBuf>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => write_stdout(text),
    }
}

fn parse_point(raw: &str, degrees: bool) -> Result<WeylPoint, Failure> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let values: Option<Vec<f64>> = parts
        .iter()
        .map(|s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect();
    match values.as_deref() {
        Some([c1, c2, c3]) if parts.len() == 3 => {
            let k = if degrees { std::f64::consts::PI / 180.0 } else { 1.0 };
            Ok(WeylPoint::new(c1 * k, c2 * k, c3 * k))
        }
        _ => Err(Failure::Input(format!(
            "malformed point `{raw}`: expected three comma-separated radian values"
        ))),
    }
}

fn analyze(args: AnalyzeArgs) -> CmdResult {
    let target = if let Some(name) = &args.name {
        catalog_point(name)?;
        AnalyzeTarget::Name(name.clone())
    } else if let Some(raw) = &args.point {
        AnalyzeTarget::Point(parse_point(raw, args.deg)?)
    } else if let Some(path) = &args.matrix {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        let doc = MatrixFile::parse(&text).map_err(|e| Failure::Input(e.to_string()))?;
        let u = doc.to_unitary().map_err(|e| Failure::Input(e.to_string()))?;
        AnalyzeTarget::Matrix {
            name: doc.name,
            matrix: u,
        }
    } else {
        return Err(Failure::Input("one of --name, --point, --matrix is required".into()));
    };
    let analysis = match Analysis::run(target, args.mc.map(|n| (n, args.seed))) {
        Ok(a) => a,
        Err(e @ nonlocal_core::Error::TheoremViolation { .. }) => {
            eprintln!("verification violation: {e}");
            return Err(Failure::Violations);
        }
        Err(e) => return Err(e.into()),
    };
    let text = if args.json {
        analysis.to_json()
    } else {
        analysis.to_text()
    };
    write_stdout(&text)
}

fn scan(args: ScanArgs) -> CmdResult {
    let rows: Vec<ScanRow> = match (args.chamber, &args.edge) {
        (Some(n), None) => suites::scan_chamber(n)?,
        (None, Some(edge)) => {
            let e = EdgeId::parse(edge)
                .ok_or_else(|| Failure::Input(format!("unknown edge `{edge}`; valid: QP, MN, PN, LQ, LN, A2P")))?;
            let steps = args
                .steps
                .ok_or_else(|| Failure::Input("--edge needs --steps".into()))?;
            suites::scan_edge(e, steps)?
        }
        _ => return Err(Failure::Input("give exactly one of --chamber or --edge".into())),
    };
    write_output(args.out.as_ref(), &report::scan_csv(&rows))
}

fn verify(args: VerifyArgs) -> CmdResult {
    let (text, csv, passed) = match args.suite {
        Suite::Theorems => {
            let r: TheoremReport = nonlocal_core::verify_theorems(args.grid)?;
            (report::theorems_text(&r), report::theorems_csv(&r), r.is_clean())
        }
        Suite::Routes => {
            let r: RoutesReport = suites::verify_routes(args.n, args.seed)?;
            (report::routes_text(&r), report::routes_csv(&r), r.passed())
        }
        Suite::Montecarlo => {
            let r: MonteCarloReport = suites::verify_montecarlo(args.mc, args.seed)?;
            (report::montecarlo_text(&r), report::montecarlo_csv(&r), r.passed())
        }
    };
    if let Some(path) = &args.out {
        write_output(Some(path), &csv)?;
    }
    write_stdout(&text)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}
