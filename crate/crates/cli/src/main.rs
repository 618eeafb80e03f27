//! `zk`: evaluations, comparisons, zero scans and benchmarks on the command line.

// `!(x > 0.0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{JobConfig, Settings};
use crate::error::CliError;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  usage or i/o error
  2  domain error or argument on a guarded pole
  3  a series or iteration did not converge
  4  result outside the double range
  5  selftest: at least one criterion failed";

#[derive(Parser, Debug)]
#[command(name = "zk", version, about = "Kernel series for the Riemann zeta function", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// zeta(s) from the kernel series
    Eval,
    /// Hardy Z(t) by several methods, with errors against the reference
    Z,
    /// Series against the reference on a grid, per kernel
    Compare,
    /// Zeros of Z(t) on a range
    Zeros,
    /// Wall time per evaluation
    Bench,
    /// Runs the acceptance checks
    Selftest,
}

/// Every flag is also a key of the config file; flags win over the file.
#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Point(s) `re,im`, several separated by `;`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Heights: a value, a list `a,b,c` or a range `min:max:step`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Real part(s) used with --t
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Kernel list: gamma, trig, gauss[:alpha], rational-trig[:p/q]
    #[arg(long, alias = "kernel", global = true)]
    pub kernels: Option<String>,
    /// `re,im` or `auto`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tau: Option<String>,
    /// Berry-Keating smoothing parameter
    #[arg(long = "K", global = true)]
    pub k: Option<String>,
    /// Parameter of a bare `gauss` kernel
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// Ratio `p/q` of a bare `rational-trig` kernel
    #[arg(long, global = true)]
    pub r: Option<String>,
    /// Relative stop tolerance of the series
    #[arg(long, global = true)]
    pub tol: Option<String>,
    #[arg(long = "max-terms", global = true)]
    pub max_terms: Option<String>,
    /// Gauss-Hermite order for the gauss kernel
    #[arg(long = "quad-order", global = true)]
    pub quad_order: Option<String>,
    /// ref, rs-main, rs-corrected, bk, series:<kernel>
    #[arg(long, alias = "method", global = true)]
    pub methods: Option<String>,
    /// Zero-scan interval `min:max[:step]`
    #[arg(long, global = true)]
    pub range: Option<String>,
    /// Zero-scan grid step
    #[arg(long, global = true)]
    pub step: Option<String>,
    /// Benchmark repetitions
    #[arg(long, global = true)]
    pub reps: Option<String>,
    /// Worker threads for grid commands
    #[arg(long, global = true)]
    pub threads: Option<String>,
    /// json, csv or text
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Output file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// key=value defaults
    #[arg(long, global = true, env = "ZK_CONFIG")]
    pub config: Option<String>,
}

fn run() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string().trim_end().to_string())),
    };
    let mut settings = match &cli.flags.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    settings.overlay(&cli.flags);
    let job = JobConfig::build(cli.command, &settings)?;
    if let Some(n) = job.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let table = commands::run(&job)?;
    output::emit(&table, job.format, job.out.as_deref())?;
    if let Some(failed) = table.failed {
        return Err(CliError::SelftestFailed(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
