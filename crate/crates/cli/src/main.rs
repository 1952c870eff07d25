use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tropopt_cli::{run, Command};

/// Exact solvers for tropical optimization problems.
#[derive(Debug, Parser)]
#[command(name = "tropopt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = std::env::var("TROPOPT_MODE").ok();
    let outcome = run(&cli.command, mode.as_deref());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
