use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use semicurve_core::error::Error;
use semicurve_core::motivic::Normalization;

mod commands;
mod input;
mod output;

use commands::{Loaded, Report};

#[derive(Debug)]
pub enum CliError {
    Input { pointer: String, message: String },
    Core(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { pointer, message } if pointer.is_empty() => write!(f, "{message}"),
            CliError::Input { pointer, message } => write!(f, "{pointer}: {message}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Input { .. } => "schema",
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => match e {
                Error::Dimension { .. } => "dimension",
                Error::IndexOutOfRange { .. } => "index-out-of-range",
                Error::Divisibility(_) => "divisibility",
                Error::DegenerateInput(_) => "degenerate-input",
                Error::TruncationInsufficient { .. } => "truncation-insufficient",
                Error::InvalidSemigroup(_) => "invalid-semigroup",
                Error::Inconsistent(_) => "inconsistent",
                Error::Truncated(_) => "truncated",
                Error::WindowTooSmall(_) => "window-too-small",
                Error::NotPlaneBranch(_) => "not-plane-branch",
                Error::Factorization(_) => "factorization",
                Error::XiInconsistent => "xi-inconsistent",
                Error::BoxTooLarge { .. } => "box-too-large",
                Error::Field(_) => "field",
            },
        }
    }

    fn to_json(&self) -> Value {
        let mut err = json!({"kind": self.kind(), "message": self.to_string()});
        if let CliError::Input { pointer, .. } = self {
            err["pointer"] = Value::from(pointer.clone());
        }
        json!({ "error": err })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NormArg {
    #[value(name = "chi-g")]
    ChiG,
    #[value(name = "closed-form", alias = "paper-literal")]
    ClosedForm,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::ChiG => Normalization::ChiG,
            NormArg::ClosedForm => Normalization::ClosedForm,
        }
    }
}

/// Value semigroups and Poincaré series of reduced curve singularities.
#[derive(Parser, Debug)]
#[command(name = "semicurve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// Initial truncation order of the ring model (doubled until certified).
    #[arg(long, global = true)]
    truncation: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Semigroup, conductor, maximal points, ξ, P', P and the Gorenstein flag.
    Analyze { spec: PathBuf },
    /// One series or polynomial.
    Series {
        spec: PathBuf,
        #[arg(long)]
        which: String,
        /// Upper corner `h1,…,hr`, or `l1,…,lr:h1,…,hr`.
        #[arg(long = "box", allow_hyphen_values = true)]
        bx: Option<String>,
        #[arg(long, value_enum, default_value = "chi-g")]
        normalization: NormArg,
    },
    /// Semigroup and polynomials of a sub-curve.
    Project {
        spec: PathBuf,
        /// One-based branch indices, e.g. `1,3`.
        #[arg(long)]
        keep: String,
    },
    /// Runs identity checks; exits with status 1 if any fails.
    Verify {
        spec: PathBuf,
        /// Comma-separated check names (default: all).
        #[arg(long)]
        checks: Option<String>,
    },
    /// Recovers the intersection multiplicities from P' and compares with the conductor oracle.
    RecoverXi { spec: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Series { .. } => "series",
            Command::Project { .. } => "project",
            Command::Verify { .. } => "verify",
            Command::RecoverXi { .. } => "recover-xi",
        }
    }

    fn spec(&self) -> &PathBuf {
        match self {
            Command::Analyze { spec }
            | Command::Series { spec, .. }
            | Command::Project { spec, .. }
            | Command::Verify { spec, .. }
            | Command::RecoverXi { spec } => spec,
        }
    }

    fn echo(&self) -> Value {
        let mut args = json!({});
        match self {
            Command::Series {
                which,
                bx,
                normalization,
                ..
            } => {
                args["which"] = Value::from(which.clone());
                args["box"] = bx.clone().map(Value::from).unwrap_or(Value::Null);
                args["normalization"] = Value::from(Normalization::from(*normalization).name());
            }
            Command::Project { keep, .. } => args["keep"] = Value::from(keep.clone()),
            Command::Verify { checks, .. } => {
                args["checks"] = checks.clone().map(Value::from).unwrap_or(Value::Null)
            }
            _ => {}
        }
        json!({"name": self.name(), "args": args})
    }
}

fn run(cli: &Cli) -> Result<(Report, String), CliError> {
    let path = cli.command.spec();
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Io(format!("{}: not UTF-8", path.display())))?;
    let spec = input::parse_spec(&text)?;
    let loaded = Loaded::build(&spec, cli.truncation)?;
    let report = match &cli.command {
        Command::Analyze { .. } => commands::analyze(&loaded)?,
        Command::Series {
            which,
            bx,
            normalization,
            ..
        } => commands::series_cmd(&loaded, which, bx.as_deref(), (*normalization).into())?,
        Command::Project { keep, .. } => commands::project(&loaded, keep)?,
        Command::Verify { checks, .. } => commands::verify(&loaded, checks.as_deref())?,
        Command::RecoverXi { .. } => commands::recover_xi(&loaded)?,
    };
    Ok((report, digest))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((mut report, digest)) => {
            match cli.format {
                Format::Json => {
                    report.json.insert("command".into(), cli.command.echo());
                    report
                        .json
                        .insert("input_sha256".into(), Value::from(digest));
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&Value::Object(report.json))
                            .expect("serializable")
                    );
                }
                Format::Text => {
                    println!("command = {}", cli.command.name());
                    println!("input_sha256 = {digest}");
                    for line in &report.lines {
                        println!("{line}");
                    }
                }
            }
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&e.to_json()).expect("serializable")
                ),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
