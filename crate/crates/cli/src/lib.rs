//! Command-line front end for `eur-core`.
//!
//! Exit codes: 0 success, 1 usage or contract error, 2 inequality violation, 3 I/O failure.

pub mod args;
pub mod commands;
pub mod parse;

use std::io::Write;

use eur_core::EurError;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "EUR_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<EurError> for CliError {
    fn from(e: EurError) -> Self {
        CliError::usage(e.to_string())
    }
}

/// Runs a parsed command and returns its exit code. Diagnostics go to `err`.
pub fn run(cli: Cli, threads: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        args::Command::Sweep(a) => commands::sweep(&a, threads, out, err),
        args::Command::Bound(a) => commands::bound(&a, out, err),
        args::Command::Verify(a) => commands::verify(&a, threads, out, err),
        args::Command::Constants(a) => commands::constants(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            // Nothing more useful can be done if stderr itself is gone.
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
