use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use projflat_cli::commands::{self, with_threads, CliError};
use projflat_cli::request::{check_n, parse_field, parse_structure, AnalysisRequest, Flags};
use projflat_cli::suites::{run_suite, SUITES};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "projflat", version, about = "Exact projective-flatness analysis of parabolic subalgebras of sl(n,R) and sl(n,H)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Print JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Include the connection, Ricci, P and gamma tensors of the carrier.
    #[arg(long, global = true)]
    dump_tensors: bool,
    /// Largest m+1 handled by the symbolic determinant.
    #[arg(long, global = true, default_value_t = projflat_core::decide::DEFAULT_ORACLE_CAP)]
    cap: usize,
    /// Branch depth limit of the solver.
    #[arg(long, global = true, default_value_t = projflat_core::decide::DEFAULT_DEPTH)]
    depth: usize,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Target {
    /// r or h.
    #[arg(long)]
    field: String,
    #[arg(long)]
    n: usize,
    /// Comma-separated simple-root indices, or `empty`.
    #[arg(long, default_value = "empty")]
    subset: String,
    /// parabolic or solvable.
    #[arg(long, default_value = "parabolic")]
    structure: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide flatness of one subalgebra.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Decide every proper subset for one n.
    Enumerate {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "parabolic")]
        structure: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the relative invariant and test candidate linear factors.
    Invariant {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named acceptance suite.
    VerifySuite {
        /// One of sl-r-small, sl-h-small, theorem1, solvable-all, tensors.
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

impl Common {
    fn flags(&self) -> Flags {
        Flags { cap: self.cap, depth: self.depth, threads: self.threads, dump_tensors: self.dump_tensors }
    }
}

fn emit<T: Serialize>(common: &Common, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).expect("reports serialize");
    if let Some(path) = &common.output {
        std::fs::write(path, format!("{json}\n")).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut out = std::io::stdout().lock();
    let _ = if common.json { writeln!(out, "{json}") } else { write!(out, "{}", text()) };
    Ok(())
}

fn request(target: &Target, common: &Common) -> Result<AnalysisRequest, CliError> {
    AnalysisRequest::parse(&target.field, target.n, &target.subset, &target.structure, common.flags())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Analyze { target, common } => {
            let req = request(&target, &common)?;
            let report = with_threads(req.flags.threads, || commands::analyze(&req))??;
            emit(&common, &report, || report.render_text())?;
            Ok(true)
        }
        Command::Enumerate { field, n, structure, common } => {
            let (field, n, structure) = (parse_field(&field)?, check_n(n)?, parse_structure(&structure)?);
            let report = commands::enumerate(field, n, structure, &common.flags())?;
            emit(&common, &report, || report.render_text())?;
            Ok(true)
        }
        Command::Invariant { target, common } => {
            let req = request(&target, &common)?;
            let report = commands::invariant(&req)?;
            emit(&common, &report, || report.render_text())?;
            Ok(true)
        }
        Command::VerifySuite { suite, common } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(CliError::Usage(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
            }
            let report = with_threads(common.threads, || run_suite(&suite))?.expect("suite name checked");
            emit(&common, &report, || report.render_text())?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("projflat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
