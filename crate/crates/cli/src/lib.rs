//! Command-line front end for `filbert-core`.
//!
//! Exit codes: `0` when everything ran and every check passed, `1` when a
//! verification, scan or certificate check failed (the output is still
//! written in full), `2` for usage errors.

mod args;
mod commands;
pub mod doc;
mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{CommandFactory, Parser};
use filbert_core::Error;

pub use args::Cli;
pub use doc::{parse_integer, parse_matrix_doc, parse_poly_coeffs, parse_rational, CellJson, MatrixDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "FILBERT_THREADS";

#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::Parse(_)
            | Error::Dimension(_)
            | Error::UnsupportedElementKind(_)
            | Error::DivisionByZero => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let verb = verb_name(&cli);
    let outcome = match threads_from_env() {
        Ok(None) => commands::dispatch(cli, out),
        Ok(Some(k)) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| commands::dispatch(cli, out)),
            Err(e) => Err(Failure::Runtime(e.to_string())),
        },
        Err(f) => Err(f),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(msg)) => {
            let mut grammar = Cli::command();
            grammar.build();
            let usage = match grammar.find_subcommand_mut(verb) {
                Some(sub) => sub.render_usage(),
                None => grammar.render_usage(),
            };
            let _ = writeln!(err, "error: {msg}\n\n{usage}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CHECK_FAILED
        }
    }
}

fn verb_name(cli: &Cli) -> &'static str {
    use args::Command;
    match cli.command {
        Command::Gen(_) => "gen",
        Command::Inv(_) => "inv",
        Command::Verify(_) => "verify",
        Command::Scan(_) => "scan",
        Command::Certify(_) => "certify",
        Command::Bench(_) => "bench",
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(e) => Err(Failure::Usage(format!("{THREADS_ENV}: {e}"))),
    }
}
