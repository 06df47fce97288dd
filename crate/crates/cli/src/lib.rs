//! Command-line front end: `eval`, `audit`, `quadcheck` and `sweep`, with
//! JSON reports (CSV for sweeps) and fixed exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a check failed |
//! | 2 | bad flags, config or bounds |
//! | 3 | evaluation error or violated precondition |

pub mod commands;
pub mod config;
pub mod json;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{cmd_audit, cmd_eval, cmd_quadcheck, cmd_sweep, Outcome};
pub use config::RunConfig;

use commands::{EXIT_OK, EXIT_USAGE};
use config::{AuditConfig, CommonConfig, EvalConfig, QuadConfig, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "appell4", version, about = "Discrete Appell F4 toolkit")]
struct Cli {
    /// JSON config file; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one series and print a JSON report.
    Eval {
        #[command(flatten)]
        args: EvalConfig,
        #[command(flatten)]
        common: CommonConfig,
    },
    /// Audit the identity catalog at seeded parameter draws.
    Audit {
        #[command(flatten)]
        args: AuditConfig,
        #[command(flatten)]
        common: CommonConfig,
    },
    /// Compare the Gamma-integral representations with the direct series.
    Quadcheck {
        #[command(flatten)]
        args: QuadConfig,
        #[command(flatten)]
        common: CommonConfig,
    },
    /// Tabulate the convergence region and divergence flag as CSV.
    Sweep {
        #[command(flatten)]
        args: SweepConfig,
        #[command(flatten)]
        common: CommonConfig,
    },
}

/// Parse `args` (program name first), run the command and write any
/// `--out` file. The report is left in the outcome when no file is named.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome {
                code,
                report: None,
                message: Some(e.render().to_string()),
            };
        }
    };
    let base = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match RunConfig::from_json(&text) {
                Ok(c) => c,
                Err(e) => return Outcome::error(EXIT_USAGE, e),
            },
            Err(e) => {
                return Outcome::error(EXIT_USAGE, format!("config {}: {e}", path.display()))
            }
        },
        None => RunConfig::default(),
    };
    let mut flags = RunConfig::default();
    let run: fn(&RunConfig) -> Outcome = match cli.command {
        Command::Eval { args, common } => {
            flags.eval = args;
            flags.common = common;
            cmd_eval
        }
        Command::Audit { args, common } => {
            flags.audit = args;
            flags.common = common;
            cmd_audit
        }
        Command::Quadcheck { args, common } => {
            flags.quadcheck = args;
            flags.common = common;
            cmd_quadcheck
        }
        Command::Sweep { args, common } => {
            flags.sweep = args;
            flags.common = common;
            cmd_sweep
        }
    };
    let cfg = base.overridden_by(&flags);
    let mut outcome = run(&cfg);
    if let (Some(path), Some(report)) = (&cfg.common.out, &outcome.report) {
        if let Err(e) = std::fs::write(path, report) {
            return Outcome::error(EXIT_USAGE, format!("writing {}: {e}", path.display()));
        }
        outcome.report = None;
    }
    outcome
}
