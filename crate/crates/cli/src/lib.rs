//! Command-line front end for `divsum-core`: single values, tables,
//! identity verification sweeps, benchmarks and inequality checks, written
//! as text, JSON or CSV.
//!
//! Exit status: 0 on success, 1 when a verification finds a mismatch (or an
//! evaluation fails), 2 on usage errors and unwritable output paths.

pub mod commands;
pub mod config;
mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{execute, Outcome, SystemClock};
pub use config::{Cli, Format, RunConfig};
pub use error::CliError;

/// Renders an outcome in the configured format.
pub fn render(outcome: &Outcome) -> Result<String, CliError> {
    let doc = &outcome.document;
    match doc.config.format {
        Format::Json => doc.to_json().map(|mut s| {
            s.push('\n');
            s
        }),
        Format::Csv => doc.to_csv(),
        Format::Text => Ok(doc.text.clone()),
    }
}

fn run_inner(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let outcome = execute(cfg)?;
    let rendered = render(&outcome)?;
    match &outcome.document.config.output {
        Some(path) => std::fs::write(path, rendered).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        })?,
        None => stdout
            .write_all(rendered.as_bytes())
            .map_err(|source| CliError::Output {
                path: "<stdout>".into(),
                source,
            })?,
    }
    Ok(outcome.exit_code)
}

/// Parses `argv`, runs it and returns the process exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{e}");
            return e.exit_code();
        }
    };
    match run_inner(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
