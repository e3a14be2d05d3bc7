//! Command-line pipeline: generate instances, solve them, verify solutions
//! and properties, measure complexity, extract hardness, compile witness
//! circuits, and run the codecs.
//!
//! Every successful command prints one machine-readable `RESULT key=value`
//! line. Exit codes: 0 success, 1 verification failure, 2 usage or input
//! errors, 3 precondition/budget refusals.

mod cmd;
mod files;

use clap::Parser;
use pigeon_core::error::Error;

#[derive(Parser)]
#[command(name = "pigeon", version, about = "empty-pigeonhole instances, solvers and verifiers")]
struct Cli {
    #[command(subcommand)]
    command: cmd::Command,
}

fn main() {
    let cli = Cli::parse();
    match cmd::run(cli.command) {
        Ok(cmd::Outcome::Pass) => std::process::exit(0),
        Ok(cmd::Outcome::Fail) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match &e {
                Error::WalkExhausted { .. } => 1,
                e if e.is_refusal() => 3,
                Error::TrialCapExceeded { .. } => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}
