use std::process::ExitCode;

use clap::Parser;
use leafcount_cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(&config) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("leafcount: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
