//! Command-line front end: runs scenario files and classifies endpoint exponents.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use patch_creep::asymptotics::{classify, classify_half_integer};
use patch_creep::scenario::{run_scenario, ScenarioFile, ScenarioKind};
use patch_creep::Error;

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "patch-creep", version, about = "Creeping patch / glue / plate load transfer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite patch, spectral solution.
    SolveFinite(RunArgs),
    /// Semi-infinite patch with parabolic stiffness.
    CaseA(RunArgs),
    /// Wedge patch with linear stiffness.
    CaseB(RunArgs),
    /// Endpoint exponent class of the contact stress.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (TOML).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Overrides `numeric.truncation`.
    #[arg(long, value_name = "N")]
    truncation: Option<usize>,
    /// Overrides the output directory of the file.
    #[arg(long, value_name = "DIR")]
    output: Option<PathBuf>,
    /// Run the invariant checks and exit without writing files.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    /// Edge exponent of the patch stiffness.
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Selects `omega = n + 1/2`.
    #[arg(long)]
    half_integer_n: Option<usize>,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::Domain(_) | Error::Precondition(_) => EXIT_VALIDATION,
        _ => EXIT_NUMERIC,
    }
}

fn run(kind: ScenarioKind, args: RunArgs) -> Result<bool, Error> {
    let mut file = ScenarioFile::load(&args.config)?;
    if file.kind != kind {
        return Err(Error::Config(format!(
            "{} holds a {} scenario, not {}",
            args.config.display(),
            file.kind.name(),
            kind.name()
        )));
    }
    if let Some(n) = args.truncation {
        file.numeric.truncation = n;
    }
    if let Some(dir) = args.output {
        file.output = dir;
    }
    let bundle = run_scenario(&file).map_err(|e| match e {
        Error::Accuracy(m) => Error::Accuracy(format!("{} scenario: {m}", kind.name())),
        Error::Factorization(m) => Error::Factorization(format!("{} scenario: {m}", kind.name())),
        other => other,
    })?;
    for c in &bundle.report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {} value={:e} tolerance={:e}", c.name, c.value, c.tolerance);
    }
    for w in &bundle.report.warnings {
        eprintln!("warning: {w}");
    }
    if !args.check {
        let written = bundle
            .write(&file.output)
            .map_err(|e| Error::Config(format!("cannot write to {}: {e}", file.output.display())))?;
        for path in written {
            println!("wrote {}", path.display());
        }
    }
    Ok(bundle.passed())
}

fn classify_cmd(args: ClassifyArgs) -> Result<String, Error> {
    let class = match (args.omega, args.half_integer_n) {
        (Some(omega), _) => classify::<f64>(omega)?,
        (None, Some(n)) => classify_half_integer::<f64>(n),
        (None, None) => unreachable!("clap requires one argument"),
    };
    Ok(class.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::Classify(args) => {
            return match classify_cmd(args) {
                Ok(line) => {
                    println!("{line}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_VALIDATION)
                }
            };
        }
        Command::SolveFinite(a) => (ScenarioKind::SolveFinite, a),
        Command::CaseA(a) => (ScenarioKind::CaseA, a),
        Command::CaseB(a) => (ScenarioKind::CaseB, a),
    };
    match run(kind, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: invariant checks failed");
            ExitCode::from(EXIT_NUMERIC)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
