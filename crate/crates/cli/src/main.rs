use std::io::Write;

use clap::Parser;
use hetcat_cli::command::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let run = execute(&cli);
    let _ = std::io::stdout().write_all(run.stdout.as_bytes());
    let _ = std::io::stderr().write_all(run.stderr.as_bytes());
    std::process::exit(run.code);
}
