//! Command-line front end: `solve`, `sweep`, `simulate` and `verify`.
//!
//! Exit status is 0 on success, 1 when `verify` finds a claim that does not
//! hold, and 2 for invalid input of any kind.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::commands::Outcome;
use crate::config::{Cli, RunConfig};
use crate::error::CliError;

/// Parse `args` (program name first), run, and print.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap already maps usage errors to 2 and help/version to 0
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match execute(&cli).and_then(|o| emit(&o).map(|_| o)) {
        Ok(o) => match o.falsified {
            Some(msg) => {
                eprintln!("{}", CliError::Falsified(msg));
                ExitCode::from(1)
            }
            None => ExitCode::SUCCESS,
        },
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

/// Run a parsed command without printing.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::resolve(&cli.command)?;
    commands::dispatch(&cfg)
}

fn emit(o: &Outcome) -> Result<(), CliError> {
    if let Some(note) = &o.note {
        eprint!("{note}");
    }
    match &o.out {
        Some(path) => std::fs::write(path, &o.body)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(o.body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::invalid(format!("cannot write output: {e}")))
        }
    }
}
