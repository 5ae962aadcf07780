//! `gruss` — evaluate Grüss-type deviation bounds on weighted sequence data.
//!
//! All observable behaviour lives in the library (`gruss_cli`); this file only
//! parses arguments, maps errors to exit code 2, and reports timing. Wall time
//! goes to stderr so stdout stays byte-identical between reruns.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use gruss_cli::run::{execute, Command};

#[derive(Parser, Debug)]
#[command(
    name = "gruss",
    version,
    about = "Check, bound, and stress-test deviation-from-alignment estimates \
             on weighted inner-product data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match execute(&cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    eprintln!("wall time: {:.3} ms", started.elapsed().as_secs_f64() * 1e3);
    ExitCode::from(code)
}
