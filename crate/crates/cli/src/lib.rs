//! Command-line front end for `npcorr`.
//!
//! `run` streams CSV or simulated input through the online estimator,
//! `batch` recomputes exact values at the same emission points, `bench`
//! sweeps timing and accuracy, and `gen` dumps simulated streams.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod manifest;
pub mod output;

use std::io::{Read, Write};

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliError;
use crate::manifest::RunManifest;

/// Executes a parsed command line and returns the summary line, if any.
pub fn execute(cli: &Cli, stdin: Box<dyn Read>, stdout: &mut dyn Write) -> Result<Option<String>, CliError> {
    match &cli.command {
        Command::Run(a) => {
            let m = RunManifest::from_args(a)?;
            commands::cmd_run(&m, stdin, stdout).map(|s| Some(s.to_string()))
        }
        Command::Batch(a) => {
            let m = RunManifest::from_args(a)?;
            commands::cmd_batch(&m, stdin, stdout).map(|s| Some(s.to_string()))
        }
        Command::Bench(a) => commands::cmd_bench(a, stdout).map(|rows| Some(format!("settings={}", rows.len()))),
        Command::Gen(a) => commands::cmd_gen(a, stdout).map(|n| Some(format!("rows={n}"))),
    }
}

/// Parses `argv`, runs, reports on `stderr`, and returns the exit code.
pub fn main_with<I, T>(argv: I, stdin: Box<dyn Read>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(summary) => {
            if let Some(s) = summary {
                let _ = writeln!(stderr, "{s}");
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
