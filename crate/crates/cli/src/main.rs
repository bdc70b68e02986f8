use std::process::ExitCode;

use clap::Parser;
use qdeficit_cli::config::RunConfig;
use qdeficit_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match RunConfig::from_cli(&cli).and_then(|config| run(&config)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
