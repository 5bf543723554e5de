//! Argument parsing and exit-code mapping.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use crate::config::{parse_grid, parse_interval, parse_tags, Format, Kinds, Overrides, RunConfig};
use crate::emit;

/// Exit status for usage errors and runtime failures.
pub const EXIT_ERROR: i32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "hhv",
    version,
    about = "Numerical checks of Hermite-Hadamard type identities and bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the two integral identities over the corpus.
    VerifyIdentity(Common),
    /// Check the twelve error bounds and their hypotheses.
    VerifyBound(Common),
    /// Check the special-mean inequalities.
    VerifyApplication(Common),
    /// Search for the best exponent and the worst-case family member.
    Tightness(Common),
    /// Identities, bounds and applications in one report.
    Scan(Common),
    /// Re-render a saved JSON report.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// json, csv or markdown.
    #[arg(long)]
    format: Option<Format>,
    /// Output file; for csv, the stem of one file per record kind.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated identity, theorem and application tags.
    #[arg(long)]
    theorems: Option<String>,
    /// Family parameters as start:stop:n.
    #[arg(long)]
    alpha_grid: Option<String>,
    /// Interval a:b; repeatable.
    #[arg(long = "interval")]
    intervals: Vec<String>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// JSON report written by an earlier run.
    input: PathBuf,
    #[arg(long, default_value = "markdown")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let intervals = self
            .intervals
            .iter()
            .map(|s| parse_interval(s))
            .collect::<Result<Vec<_>, _>>()?;
        cfg.apply(Overrides {
            format: self.format,
            out: self.out,
            tol: self.tol,
            theorems: self.theorems.as_deref().map(parse_tags),
            alpha_grid: self.alpha_grid.as_deref().map(parse_grid).transpose()?,
            intervals,
        });
        Ok(cfg)
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let (name, kinds, common) = match cli.command {
        Command::VerifyIdentity(c) => ("verify-identity", Kinds::IDENTITIES, c),
        Command::VerifyBound(c) => ("verify-bound", Kinds::BOUNDS, c),
        Command::VerifyApplication(c) => ("verify-application", Kinds::APPLICATIONS, c),
        Command::Tightness(c) => ("tightness", Kinds::SEARCHES, c),
        Command::Scan(c) => ("scan", Kinds::SCAN, c),
        Command::Report(r) => {
            let text = std::fs::read_to_string(&r.input)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", r.input.display()))?;
            let report = emit::from_json(&text)?;
            emit::emit(&report, r.format, r.out.as_deref())?;
            return Ok(report.summary.exit_code());
        }
    };
    let cfg = common.config()?;
    let report = crate::runner::run(&cfg, kinds, name)?;
    emit::emit(&report, cfg.format, cfg.out.as_deref())?;
    Ok(report.summary.exit_code())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
