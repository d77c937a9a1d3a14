//! `photonq`: build, verify, and statistically exercise the hybrid
//! polarization/path qudit gate set from the command line.

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;

#[derive(Parser)]
#[command(
    name = "photonq",
    version,
    about = "Linear-optical simulation of hybrid polarization-path qudit gates",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: commands::Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
