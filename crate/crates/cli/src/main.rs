use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = fastpts_cli::cli::Cli::parse();
    match fastpts_cli::cli::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
