use std::process::ExitCode;

use clap::Parser;
use hyperwave_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("hyperwave: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
