use std::io;
use std::process::ExitCode;

use clap::Parser;
use eur_cli::parse::parse_threads;
use eur_cli::{run, Cli, EXIT_USAGE, THREADS_ENV};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not errors.
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let env = std::env::var(THREADS_ENV).ok();
    let threads = match parse_threads(env.as_deref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let code = run(cli, threads, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
