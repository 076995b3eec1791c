use std::process::ExitCode;

use clap::Parser;
use sdrd::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
