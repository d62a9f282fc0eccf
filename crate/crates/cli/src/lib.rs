//! Library side of the `dqp` binary: argument types, commands and report
//! rendering. `main.rs` only parses arguments and calls [`execute`].

pub mod args;
pub mod commands;
pub mod error;
pub mod grammar;
pub mod report;
pub mod verify;

use std::io::Write;

use args::{Cli, Command};
use error::CliError;
use report::Report;

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Invariants(a) => commands::invariants(a),
        Command::Lecycles(a) => commands::lecycles(a),
        Command::Chow(a) => commands::chow(a),
        Command::Closure(a) => commands::closure(a),
        Command::Count(a) => commands::count(a),
        Command::Verify(a) => verify::verify(a),
    }
}

/// Runs, writes the report, prints diagnostics to stderr, and returns the exit status.
pub fn execute(cli: &Cli) -> i32 {
    match run(cli).and_then(|report| emit(cli, &report).map(|()| report)) {
        Ok(report) => {
            for c in report.failed_checks() {
                eprintln!("check failed: {}: {}", c.name, c.detail);
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = report.render(cli.format, cli.timings)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
