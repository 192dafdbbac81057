//! Command-line front end: argument parsing, exit codes and report emission.
//!
//! [`run`] is the whole program minus process I/O, so tests drive it directly.

mod args;
mod commands;
mod report;

use std::ffi::OsString;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, HopArg, Model, RhoArg};
pub use report::{RunReport, TOOL_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] tcl_core::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(tcl_core::Error::InvalidParameter(_)) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

/// Result of one invocation. `stdout` carries the report unless `--report`
/// redirected it to a file.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<RunReport>,
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

impl Outcome {
    fn failed(code: i32, message: String) -> Self {
        Outcome {
            code,
            report: None,
            stdout: None,
            stderr: Some(message),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    report: None,
                    stdout: Some(text),
                    stderr: None,
                },
                _ => Outcome::failed(EXIT_USAGE, text),
            };
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| commands::execute(&cli)));
    let report = match result {
        Ok(Ok(report)) => report,
        Ok(Err(e)) => return Outcome::failed(e.exit_code(), format!("error: {e}\n")),
        Err(panic) => {
            let what = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            return Outcome::failed(EXIT_INTERNAL, format!("error: internal failure: {what}\n"));
        }
    };
    let text = report.to_json();
    match &cli.report {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code: EXIT_OK,
                report: Some(report),
                stdout: None,
                stderr: None,
            },
            Err(e) => Outcome::failed(
                EXIT_DATA,
                format!("error: cannot write report {}: {e}\n", path.display()),
            ),
        },
        None => Outcome {
            code: EXIT_OK,
            report: Some(report),
            stdout: Some(text),
            stderr: None,
        },
    }
}
