//! Command-line front end. [`run`] takes argv and output streams so the whole
//! interface can be driven in-process.
//!
//! Exit codes: 0 on success, 1 when a verification or reproduction check
//! fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use egalpof::constructions::{ConstructionParams, Family};
use egalpof::io::{parse_instance_file, parse_rational, write_instance_file};
use egalpof::report::{reproduce, to_csv, to_markdown};
use egalpof::solvers::{max_welfare, price_of_fairness, Objective, PropertyFilter, SolverConfig};
use egalpof::verify::{run_suite, Suite, VerifyConfig};
use egalpof::{Instance, Rational};

/// Environment variable overriding the default enumeration cap.
pub const CAP_ENV: &str = "EGALPOF_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "egalpof",
    version,
    about = "Exact egalitarian welfare and price of fairness for indivisible goods"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Maximize a welfare objective over allocations with a property.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        objective: Objective,
        #[arg(long, default_value = "none")]
        property: PropertyFilter,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Print the egalitarian price of a property.
    Pof {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_parser = parse_fairness)]
        property: PropertyFilter,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Write an instance from one of the lower-bound constructions.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_parser = parse_rational)]
        eps: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        x: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        y: Option<Rational>,
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check bounds and procedures on seeded random instances.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Solve the construction tables and write them out.
    Reproduce {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Md,
}

fn parse_fairness(s: &str) -> Result<PropertyFilter, String> {
    match s.parse()? {
        PropertyFilter::None => Err("expected one of ef1, ba, rr, muw, mnw".into()),
        p => Ok(p),
    }
}

#[derive(Serialize)]
struct SolveOutput {
    objective: &'static str,
    property: &'static str,
    value: String,
    witness: String,
    bundles: Vec<Vec<usize>>,
    explored: u64,
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<egalpof::Error> for Failure {
    fn from(e: egalpof::Error) -> Self {
        Failure::usage(e)
    }
}

type Outcome = Result<i32, Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse_instance_file(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn solver_config(cap: Option<u64>) -> Result<SolverConfig, Failure> {
    let cap = match cap {
        Some(c) => Some(c),
        None => match std::env::var(CAP_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse()
                    .map_err(|_| Failure::usage(format!("{CAP_ENV}: invalid cap '{v}'")))?,
            ),
            Err(_) => None,
        },
    };
    Ok(cap.map_or_else(SolverConfig::default, SolverConfig::with_cap))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("stdout: {e}")))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Solve {
            instance,
            objective,
            property,
            cap,
        } => {
            let inst = read_instance(&instance)?;
            let res = max_welfare(&inst, objective, property, &solver_config(cap)?)?;
            let output = SolveOutput {
                objective: objective.label(),
                property: property.label(),
                value: res.value.to_string(),
                witness: res.witness.to_string(),
                bundles: res.witness.bundles(),
                explored: res.explored,
            };
            emit(
                out,
                &format!(
                    "{}\n",
                    serde_json::to_string(&output).expect("serializable")
                ),
            )?;
            Ok(EXIT_OK)
        }
        Command::Pof {
            instance,
            property,
            cap,
        } => {
            let inst = read_instance(&instance)?;
            let pof = price_of_fairness(&inst, property, &solver_config(cap)?)?;
            emit(out, &format!("{pof}\n"))?;
            Ok(EXIT_OK)
        }
        Command::Generate {
            family,
            n,
            m,
            eps,
            x,
            y,
            pad,
            out: path,
        } => {
            let params = ConstructionParams {
                family,
                n,
                m,
                eps,
                x,
                y,
                pad,
            };
            let text = format!("{}\n", write_instance_file(&params.build()?));
            write_file(&path, &text)?;
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            n,
            m_max,
            trials,
            seed,
        } => {
            let mut config = VerifyConfig::new(suite, n, m_max, trials, seed);
            config.solver = solver_config(None)?;
            let report = run_suite(&config)?;
            emit(
                out,
                &format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).expect("serializable")
                ),
            )?;
            Ok(if report.pass { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Reproduce { out: path, format } => {
            let result = reproduce(&solver_config(None)?)?;
            let text = match format {
                Format::Csv => to_csv(&result.rows),
                Format::Md => to_markdown(&result.rows),
            };
            write_file(&path, &text)?;
            emit(
                out,
                &format!("wrote {} rows to {}\n", result.rows.len(), path.display()),
            )?;
            if result.mismatches.is_empty() {
                return Ok(EXIT_OK);
            }
            for line in &result.mismatches {
                let _ = writeln!(err, "mismatch: {line}");
            }
            Ok(EXIT_VIOLATION)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
