use std::process::ExitCode;

use clap::Parser;
use semidirac_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(Some(bundle)) => {
            for (name, pass) in &bundle.checks {
                println!("{name}: {}", if *pass { "pass" } else { "FAIL" });
            }
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
